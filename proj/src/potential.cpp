#include "bpskit/potential.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "bpskit/error.hpp"

namespace bpskit {

bool is_path(const Quiver& q, const Path& p) {
    if (p.empty()) return false;
    for (int a : p) {
        if (a < 0 || a >= static_cast<int>(q.num_arrows())) return false;
    }
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        if (q.arrow(p[i]).source != q.arrow(p[i + 1]).target) return false;
    }
    return true;
}

bool is_cycle(const Quiver& q, const Path& p) {
    return is_path(q, p) && q.arrow(p.front()).target == q.arrow(p.back()).source;
}

Path canonical_rotation(const Path& cycle) {
    Path best = cycle;
    Path cur = cycle;
    for (std::size_t r = 1; r < cycle.size(); ++r) {
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        if (cur < best) best = cur;
    }
    return best;
}

Path parse_path(const Quiver& q, const std::vector<std::string>& arrow_names) {
    Path p;
    p.reserve(arrow_names.size());
    for (const auto& n : arrow_names) p.push_back(q.arrow_index(n));
    return p;
}

std::string path_str(const Quiver& q, const Path& p) {
    std::string s;
    for (int a : p) s += q.arrow(a).name;
    return s;
}

void Potential::add(const Quiver& q, const Path& cycle, const Rational& coeff) {
    if (!is_cycle(q, cycle)) {
        throw InvalidInput("potential term '" + path_str(q, cycle) + "' is not a cycle");
    }
    add_unchecked(cycle, coeff);
}

void Potential::add_unchecked(const Path& cycle, const Rational& coeff) {
    if (coeff == 0) return;
    Path key = canonical_rotation(cycle);
    auto [it, inserted] = terms_.try_emplace(std::move(key), coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

std::size_t Potential::max_length() const {
    std::size_t m = 0;
    for (const auto& [p, c] : terms_) m = std::max(m, p.size());
    return m;
}

Potential Potential::homogeneous_part(std::size_t length) const {
    Potential r;
    for (const auto& [p, c] : terms_) {
        if (p.size() == length) r.terms_.emplace(p, c);
    }
    return r;
}

Potential& Potential::operator+=(const Potential& o) {
    for (const auto& [p, c] : o.terms_) add_unchecked(p, c);
    return *this;
}

Potential& Potential::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [p, v] : terms_) v *= c;
    return *this;
}

std::string Potential::str(const Quiver& q) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [p, c] : terms_) {
        const bool neg = c < 0;
        const Rational mag = neg ? Rational(-c) : c;
        if (s.empty()) {
            if (neg) s += "-";
        } else {
            s += neg ? " - " : " + ";
        }
        if (mag != 1) s += mag.get_str() + "*";
        s += path_str(q, p);
    }
    return s;
}

std::vector<PathTerm> cyclic_derivative(const Potential& w, int arrow) {
    std::map<Path, Rational> acc;
    for (const auto& [cycle, c] : w.terms()) {
        const std::size_t n = cycle.size();
        for (std::size_t m = 0; m < n; ++m) {
            if (cycle[m] != arrow) continue;
            // arrows applied after the occurrence come first when printed
            Path p;
            p.reserve(n - 1);
            for (std::size_t i = m + 1; i < n; ++i) p.push_back(cycle[i]);
            for (std::size_t i = 0; i < m; ++i) p.push_back(cycle[i]);
            acc[p] += c;
        }
    }
    std::vector<PathTerm> out;
    for (auto& [p, c] : acc) {
        if (c != 0) out.push_back({c, p});
    }
    return out;
}

namespace {

// Phase-one simplex with Bland's rule: is {x >= 0 : A x = b} nonempty, b >= 0?
std::optional<std::vector<Rational>> feasible_point(const std::vector<std::vector<Rational>>& a,
                                                    const std::vector<Rational>& b) {
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    const std::size_t cols = n + m;  // original + artificial
    std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols + 1));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
        t[i][n + i] = 1;
        t[i][cols] = b[i];
        basis[i] = n + i;
    }
    // objective: minimise sum of artificials, stored as reduced costs
    std::vector<Rational> z(cols + 1);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j <= cols; ++j) {
            if (j < n || j == cols) z[j] -= t[i][j];
        }
    }
    while (true) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j) {
            if (z[j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter == cols) break;
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] > 0) {
                Rational ratio = t[i][cols] / t[i][enter];
                if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
        }
        if (leave == m) break;  // unbounded cannot happen in phase one
        const Rational piv = t[leave][enter];
        for (auto& v : t[leave]) v /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            const Rational f = t[i][enter];
            for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
        }
        if (z[enter] != 0) {
            const Rational f = z[enter];
            for (std::size_t j = 0; j <= cols; ++j) z[j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }
    if (z[cols] != 0) return std::nullopt;
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < n) x[basis[i]] = t[i][cols];
    }
    return x;
}

}  // namespace

std::optional<Grading> is_quasihomogeneous(const Quiver& q, const Potential& w) {
    if (w.is_zero()) throw std::invalid_argument("quasihomogeneity of the zero potential");
    std::set<std::size_t> lengths;
    for (const auto& [p, c] : w.terms()) lengths.insert(p.size());
    if (lengths.size() == 1) {
        return Grading{std::vector<Integer>(q.num_arrows(), 1), Integer(*lengths.begin())};
    }
    // Sum of weights along every term = 1, weights >= 0.
    std::vector<std::vector<Rational>> a;
    for (const auto& [p, c] : w.terms()) {
        std::vector<Rational> row(q.num_arrows());
        for (int arr : p) row[arr] += 1;
        a.push_back(std::move(row));
    }
    auto x = feasible_point(a, std::vector<Rational>(a.size(), Rational(1)));
    if (!x) return std::nullopt;
    Integer l = 1;
    for (const auto& v : *x) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    Grading g;
    g.degree = l;
    for (const auto& v : *x) g.weight.push_back(Integer(v * l));
    return g;
}

}  // namespace bpskit
