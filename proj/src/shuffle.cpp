#include "bpskit/shuffle.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "bpskit/error.hpp"

namespace bpskit {

// ---- MPoly ----

MPoly MPoly::constant(int num_vars, const Rational& c) {
    MPoly p(num_vars);
    if (c != 0) p.t_.emplace(Monomial(num_vars, 0), c);
    return p;
}

MPoly MPoly::monomial(Monomial m, const Rational& c) {
    MPoly p(static_cast<int>(m.size()));
    if (c != 0) p.t_.emplace(std::move(m), c);
    return p;
}

MPoly MPoly::difference(int num_vars, int a, int b) {
    Monomial ma(num_vars, 0), mb(num_vars, 0);
    ma[a] = 1;
    mb[b] = 1;
    MPoly p(num_vars);
    p.t_.emplace(ma, Rational(1));
    p.t_.emplace(mb, Rational(-1));
    return p;
}

Rational MPoly::coeff(const Monomial& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? Rational(0) : it->second;
}

int MPoly::homogeneous_degree() const {
    int deg = -1;
    for (const auto& [m, c] : t_) {
        int s = 0;
        for (int e : m) s += e;
        if (deg >= 0 && s != deg) throw std::logic_error("polynomial is not homogeneous");
        deg = s;
    }
    return deg;
}

MPoly& MPoly::operator+=(const MPoly& o) {
    if (n_ == 0 && t_.empty()) n_ = o.n_;
    for (const auto& [m, c] : o.t_) {
        auto [it, ins] = t_.try_emplace(m, c);
        if (!ins) {
            it->second += c;
            if (it->second == 0) t_.erase(it);
        }
    }
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    MPoly neg = o;
    neg *= -1;
    return *this += neg;
}

MPoly& MPoly::operator*=(const Rational& c) {
    if (c == 0) {
        t_.clear();
        return *this;
    }
    for (auto& [m, v] : t_) v *= c;
    return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r(std::max(a.n_, b.n_));
    for (const auto& [ma, ca] : a.t_)
        for (const auto& [mb, cb] : b.t_) {
            Monomial m = ma;
            for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
            auto [it, ins] = r.t_.try_emplace(std::move(m), ca * cb);
            if (!ins) {
                it->second += ca * cb;
                if (it->second == 0) r.t_.erase(it);
            }
        }
    return r;
}

MPoly MPoly::times_difference(int a, int b) const {
    MPoly r(n_);
    auto add = [&r](Monomial m, const Rational& c) {
        auto [it, ins] = r.t_.try_emplace(std::move(m), c);
        if (!ins) {
            it->second += c;
            if (it->second == 0) r.t_.erase(it);
        }
    };
    for (const auto& [m, c] : t_) {
        Monomial ma = m, mb = m;
        ++ma[a];
        ++mb[b];
        add(std::move(ma), c);
        add(std::move(mb), -c);
    }
    return r;
}

MPoly MPoly::divided_by_difference(int a, int b) const {
    // synthetic division in z_a: q_{k-1} = c_k + z_b q_k
    std::map<int, MPoly> by_power;
    for (const auto& [m, c] : t_) {
        Monomial rest = m;
        const int k = rest[a];
        rest[a] = 0;
        auto& slot = by_power.try_emplace(k, n_).first->second;
        slot.t_.emplace(std::move(rest), c);
    }
    MPoly result(n_);
    if (by_power.empty()) return result;
    MPoly q(n_);
    for (int k = by_power.rbegin()->first; k >= 1; --k) {
        MPoly next(n_);
        for (const auto& [m, c] : q.t_) {
            Monomial s = m;
            ++s[b];
            next.t_.emplace(std::move(s), c);
        }
        if (auto it = by_power.find(k); it != by_power.end()) next += it->second;
        q = std::move(next);
        for (const auto& [m, c] : q.t_) {
            Monomial s = m;
            s[a] = k - 1;
            result.t_.emplace(std::move(s), c);
        }
    }
    MPoly rem(n_);
    for (const auto& [m, c] : q.t_) {
        Monomial s = m;
        ++s[b];
        rem.t_.emplace(std::move(s), c);
    }
    if (auto it = by_power.find(0); it != by_power.end()) rem += it->second;
    if (!rem.is_zero()) throw std::logic_error("shuffle sum is not divisible by the Vandermonde");
    return result;
}

MPoly MPoly::renamed(const std::vector<int>& image, int num_vars) const {
    MPoly r(num_vars);
    for (const auto& [m, c] : t_) {
        Monomial s(num_vars, 0);
        for (std::size_t i = 0; i < m.size(); ++i) s[image[i]] += m[i];
        r.t_.emplace(std::move(s), c);
    }
    return r;
}

MPoly MPoly::swapped(int a, int b) const {
    MPoly r(n_);
    for (const auto& [m, c] : t_) {
        Monomial s = m;
        std::swap(s[a], s[b]);
        r.t_.emplace(std::move(s), c);
    }
    return r;
}

std::string MPoly::str(const std::vector<std::string>& names) const {
    if (t_.empty()) return "0";
    std::string out;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const auto& [m, c] = *it;
        bool unit_monomial = std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
        Rational a = abs(c);
        std::string term;
        if (a != 1 || unit_monomial) term = to_string(a);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!term.empty() && term.back() != '*') term += "*";
            term += names.at(i);
            if (m[i] > 1) term += "^" + std::to_string(m[i]);
        }
        if (out.empty()) {
            out = (c < 0 ? "-" : "") + term;
        } else {
            out += (c < 0 ? " - " : " + ") + term;
        }
    }
    return out;
}

// ---- shuffle algebra ----

std::vector<int> variable_offsets(const DimVector& d) {
    std::vector<int> off(d.size() + 1, 0);
    for (std::size_t i = 0; i < d.size(); ++i) off[i + 1] = off[i] + d[i];
    return off;
}

std::vector<std::string> variable_names(const DimVector& d) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (int r = 0; r < d[i]; ++r) {
            std::string n = "z" + std::to_string(i + 1);
            if (d[i] > 1) n += "_" + std::to_string(r + 1);
            names.push_back(n);
        }
    return names;
}

bool is_vertex_symmetric(const SymPoly& f) {
    const auto off = variable_offsets(f.dim);
    for (std::size_t i = 0; i < f.dim.size(); ++i)
        for (int r = off[i]; r + 1 < off[i + 1]; ++r)
            if (!(f.poly.swapped(r, r + 1) == f.poly)) return false;
    return true;
}

SymPoly generator(const Quiver& q, int vertex, int k) {
    if (vertex < 0 || vertex >= static_cast<int>(q.num_vertices()))
        throw InvalidInput("generator at an unknown vertex");
    if (k < 0) throw InvalidInput("generator exponent must be nonnegative");
    return {DimVector::unit(q.num_vertices(), vertex), MPoly::monomial(Monomial{k})};
}

namespace {

// Calls fn(S) for every k-subset S of {0..n-1} in lexicographic order.
void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> s(k);
    for (int i = 0; i < k; ++i) s[i] = i;
    while (true) {
        fn(s);
        int i = k - 1;
        while (i >= 0 && s[i] == n - k + i) --i;
        if (i < 0) return;
        ++s[i];
        for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
    }
}

}  // namespace

SymPoly shuffle_product(const Quiver& q, const SymPoly& f, const SymPoly& g) {
    if (f.dim.size() != q.num_vertices() || g.dim.size() != q.num_vertices())
        throw InvalidInput("shuffle factors do not match the quiver");
    const DimVector d = f.dim + g.dim;
    const int nv = d.total();
    const std::size_t nq = q.num_vertices();
    const auto off = variable_offsets(d);
    const auto off_f = variable_offsets(f.dim);
    const auto off_g = variable_offsets(g.dim);

    // per-vertex choice of which variables go to f
    std::vector<std::vector<std::vector<int>>> choices(nq);
    for (std::size_t i = 0; i < nq; ++i)
        for_each_subset(d[i], f.dim[i], [&](const std::vector<int>& s) { choices[i].push_back(s); });

    MPoly sum(nv);
    std::vector<std::size_t> pick(nq, 0);
    while (true) {
        std::vector<std::vector<int>> in_f(nq), in_g(nq);
        std::vector<int> image_f(f.dim.total()), image_g(g.dim.total());
        int sign = 1;
        for (std::size_t i = 0; i < nq; ++i) {
            std::vector<bool> mark(d[i], false);
            for (int r : choices[i][pick[i]]) mark[r] = true;
            for (int r = 0; r < d[i]; ++r) (mark[r] ? in_f : in_g)[i].push_back(r);
            for (std::size_t r = 0; r < in_f[i].size(); ++r) image_f[off_f[i] + r] = off[i] + in_f[i][r];
            for (std::size_t r = 0; r < in_g[i].size(); ++r) image_g[off_g[i] + r] = off[i] + in_g[i][r];
            // pairs r < s with r in g and s in f flip sign against the Vandermonde
            for (int s : in_f[i])
                for (int r : in_g[i])
                    if (r < s) sign = -sign;
        }
        MPoly term = f.poly.renamed(image_f, nv) * g.poly.renamed(image_g, nv);
        for (const auto& a : q.arrows())
            for (int r : in_f[a.source])
                for (int s : in_g[a.target])
                    term = term.times_difference(off[a.target] + s, off[a.source] + r);
        for (std::size_t i = 0; i < nq; ++i)
            for (const auto* part : {&in_f[i], &in_g[i]})
                for (std::size_t x = 0; x < part->size(); ++x)
                    for (std::size_t y = x + 1; y < part->size(); ++y)
                        term = term.times_difference(off[i] + (*part)[y], off[i] + (*part)[x]);
        term *= sign;
        sum += term;

        std::size_t i = 0;
        while (i < nq && ++pick[i] == choices[i].size()) pick[i++] = 0;
        if (i == nq) break;
    }
    for (std::size_t i = 0; i < nq; ++i)
        for (int r = 0; r < d[i]; ++r)
            for (int s = r + 1; s < d[i]; ++s) sum = sum.divided_by_difference(off[i] + s, off[i] + r);
    SymPoly out{d, std::move(sum)};
    if (!is_vertex_symmetric(out)) throw std::logic_error("shuffle product is not symmetric");
    return out;
}

int cohomological_degree(const Quiver& q, const SymPoly& f) {
    return 2 * f.poly.homogeneous_degree() + euler_form(q, f.dim, f.dim);
}

Integer GradedDims::at(int n) const {
    auto it = dims.find(n);
    return it == dims.end() ? Integer(0) : it->second;
}

namespace {

// Incremental row echelon form keyed by leading monomial.
class Echelon {
public:
    bool insert(MPoly p) {
        while (!p.is_zero()) {
            const auto& [lead, c] = *p.terms().rbegin();
            auto it = rows_.find(lead);
            if (it == rows_.end()) {
                const Rational inv = 1 / c;
                p *= inv;
                Monomial key = p.terms().rbegin()->first;
                rows_.emplace(std::move(key), std::move(p));
                return true;
            }
            MPoly sub = it->second;
            sub *= c;
            p -= sub;
        }
        return false;
    }
    std::size_t rank() const { return rows_.size(); }

private:
    std::map<Monomial, MPoly> rows_;
};

}  // namespace

GradedDims spherical_dimensions(const Quiver& q, const DimVector& d, int n_max,
                                const SphericalOptions& opt) {
    GradedDims out;
    out.dim = d;
    out.n_max = n_max;
    if (d.is_zero()) {
        if (n_max >= 0) out.dims[0] = 1;
        return out;
    }
    const int chi = euler_form(q, d, d);
    if (n_max < chi) return out;
    const int m_max = (n_max - chi) / 2;
    const auto counts = q.arrow_counts();

    std::vector<int> seq;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (int r = 0; r < d[i]; ++r) seq.push_back(static_cast<int>(i));

    std::map<int, Echelon> by_degree;
    long orderings = 0;
    do {
        if (orderings == opt.max_orderings) {
            out.partial = true;
            break;
        }
        ++orderings;
        int kdeg = 0;
        for (std::size_t t = 0; t < seq.size(); ++t)
            for (std::size_t u = t + 1; u < seq.size(); ++u)
                kdeg += counts[seq[t]][seq[u]] - (seq[t] == seq[u] ? 1 : 0);
        if (kdeg > m_max) continue;
        std::function<void(std::size_t, const SymPoly*, int)> dfs = [&](std::size_t t,
                                                                         const SymPoly* prefix,
                                                                         int k_used) {
            if (t == seq.size()) {
                const int deg = prefix->poly.homogeneous_degree();
                if (deg >= 0) by_degree[deg].insert(prefix->poly);
                return;
            }
            for (int k = 0; k_used + k + kdeg <= m_max; ++k) {
                const SymPoly gen = generator(q, seq[t], k);
                const SymPoly next = prefix ? shuffle_product(q, *prefix, gen) : gen;
                dfs(t + 1, &next, k_used + k);
            }
        };
        dfs(0, nullptr, 0);
    } while (std::next_permutation(seq.begin(), seq.end()));

    for (const auto& [m, ech] : by_degree)
        if (ech.rank() > 0) out.dims[2 * m + chi] = static_cast<unsigned long>(ech.rank());
    return out;
}

GradedDims coha_w0_dimensions(const Quiver& q, const DimVector& d, int n_max) {
    GradedDims out;
    out.dim = d;
    out.n_max = n_max;
    const int chi = euler_form(q, d, d);
    if (n_max < chi) return out;
    const int m_max = (n_max - chi) / 2;
    // coefficients of prod_i prod_{j<=d_i} 1/(1-t^j)
    std::vector<Integer> c(m_max + 1, 0);
    c[0] = 1;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (int j = 1; j <= d[i]; ++j)
            for (int m = j; m <= m_max; ++m) c[m] += c[m - j];
    for (int m = 0; m <= m_max; ++m)
        if (c[m] != 0) out.dims[2 * m + chi] = c[m];
    return out;
}

GradedDims dimensions_from_series(const HalfLaurent& coeff, const DimVector& d, int n_max) {
    GradedDims out;
    out.dim = d;
    out.n_max = std::min(n_max, coeff.known_through());
    for (const auto& [h, c] : coeff.terms()) {
        if (h > out.n_max) break;
        const Rational v = (h % 2 == 0) ? c : Rational(-c);
        if (!is_integer(v) || v < 0) {
            throw Refusal("coefficient of (-q^{1/2})^" + std::to_string(h) + " is " + to_string(v) +
                          ", not a dimension");
        }
        out.dims[h] = v.get_num();
    }
    return out;
}

std::string to_string(SphericalVerdict::Kind k) {
    switch (k) {
        case SphericalVerdict::Kind::Equal:
            return "equal";
        case SphericalVerdict::Kind::CohaLarger:
            return "coha_larger";
        case SphericalVerdict::Kind::Inconsistent:
            return "inconsistent";
    }
    return "?";
}

SphericalVerdict compare_spherical(const HalfLaurent& zcoeff, const GradedDims& sph) {
    SphericalVerdict v;
    GradedDims coha;
    try {
        coha = dimensions_from_series(zcoeff, sph.dim, sph.n_max);
    } catch (const Refusal& e) {
        v.kind = SphericalVerdict::Kind::Inconsistent;
        v.detail = e.what();
        return v;
    }
    v.compared_through = coha.n_max;
    std::set<int> degrees;
    for (const auto& [n, x] : coha.dims) degrees.insert(n);
    for (const auto& [n, x] : sph.dims)
        if (n <= coha.n_max) degrees.insert(n);
    for (int n : degrees) {
        const Integer a = coha.at(n), b = sph.at(n);
        if (a == b) continue;
        v.degree = n;
        v.coha_dim = a;
        v.spherical_dim = b;
        if (a > b) {
            v.kind = SphericalVerdict::Kind::CohaLarger;
            v.detail = "dim Coha^" + std::to_string(n) + " = " + a.get_str() + " > " + b.get_str() +
                       " = dim S^" + std::to_string(n);
        } else {
            v.kind = SphericalVerdict::Kind::Inconsistent;
            v.detail = "spherical part larger than the whole in degree " + std::to_string(n);
        }
        return v;
    }
    return v;
}

TorusElement g_invariant_series(const BPSTable& omega_ginv, const Stability& zeta,
                                std::shared_ptr<const Quiver> quiver, const DimVector& box,
                                int order) {
    return recombine(omega_ginv, zeta, std::move(quiver), box, order);
}

BPSTable markov_ginv_table() {
    const HalfLaurent p1 = HalfLaurent::exact({{-1, Rational(-1)}, {1, Rational(-1)}});
    auto v = [](int a, int b, int c) { return DimVector({a, b, c}); };
    return {{v(1, 0, 0), 1}, {v(0, 1, 0), 1}, {v(0, 0, 1), 1}, {v(1, 1, 0), p1},
            {v(0, 1, 1), p1}, {v(1, 0, 1), 0}, {v(1, 1, 1), 1}};
}

}  // namespace bpskit
