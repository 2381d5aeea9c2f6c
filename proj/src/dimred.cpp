#include "bpskit/dimred.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <set>

#include "bpskit/error.hpp"

namespace bpskit {

namespace {

using i64 = std::int64_t;

i64 mod(i64 a, i64 p) {
    a %= p;
    return a < 0 ? a + p : a;
}

i64 pow_mod(i64 b, i64 e, i64 p) {
    i64 r = 1;
    b = mod(b, p);
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

i64 rational_mod(const Rational& c, i64 p) {
    const Integer pz = p;
    Integer n = c.get_num() % pz;
    Integer d = c.get_den() % pz;
    if (d == 0) throw std::domain_error("coefficient denominator vanishes mod p");
    const i64 ni = mod(n.get_si(), p);
    const i64 di = mod(d.get_si(), p);
    return ni * pow_mod(di, p - 2, p) % p;
}

bool is_prime(int n) {
    if (n < 2) return false;
    for (int k = 2; k * k <= n; ++k)
        if (n % k == 0) return false;
    return true;
}

// Dense row-major matrix over F_p.
struct Mat {
    int rows = 0, cols = 0;
    std::vector<i64> a;
    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}
    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    i64& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    i64 at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

Mat mul(const Mat& x, const Mat& y, i64 p) {
    Mat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const i64 v = x.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < y.cols; ++j) r.at(i, j) = (r.at(i, j) + v * y.at(k, j)) % p;
        }
    return r;
}

// Rank of the coefficient part and whether the augmented column is consistent.
std::pair<int, bool> solve_shape(std::vector<std::vector<i64>>& rows, int n_vars, i64 p) {
    int rank = 0;
    for (int col = 0; col < n_vars && rank < static_cast<int>(rows.size()); ++col) {
        int piv = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[piv], rows[rank]);
        const i64 inv = pow_mod(rows[rank][col], p - 2, p);
        for (auto& v : rows[rank]) v = v * inv % p;
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            const i64 f = rows[r][col];
            for (int c = col; c <= n_vars; ++c) rows[r][c] = mod(rows[r][c] - f * rows[rank][c], p);
        }
        ++rank;
    }
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
        if (rows[r][n_vars] != 0) return {rank, false};
    return {rank, true};
}

// Shared setup for one (cut, d, p) count.
class Counter {
public:
    Counter(const CutData& cd, const DimVector& d, i64 p, bool use_family)
        : cd_(cd), d_(d), p_(p) {
        const Quiver& q = cd.reduced;
        std::set<int> fam;
        if (use_family) fam.insert(cd.linear_family.begin(), cd.linear_family.end());
        offset_.assign(q.num_arrows(), -1);
        is_linear_.assign(q.num_arrows(), false);
        for (std::size_t a = 0; a < q.num_arrows(); ++a) {
            const int sz = d[q.arrow(a).target] * d[q.arrow(a).source];
            if (fam.count(static_cast<int>(a))) {
                is_linear_[a] = true;
                offset_[a] = n_lin_;
                n_lin_ += sz;
            } else {
                offset_[a] = n_free_;
                n_free_ += sz;
            }
        }
        for (const auto& rel : cd.relations) {
            std::vector<std::pair<i64, Path>> terms;
            for (const auto& t : rel.terms) {
                const i64 c = rational_mod(t.coeff, p);
                if (c != 0) terms.emplace_back(c, t.path);
            }
            rels_.push_back({rel.source, rel.target, std::move(terms)});
        }
    }

    int free_entries() const { return n_free_; }

    // Count over every assignment of the free entries.
    Integer count(std::uint64_t budget) const {
        double fibers = 1;
        for (int i = 0; i < n_free_; ++i) fibers *= static_cast<double>(p_);
        if (fibers > static_cast<double>(budget)) {
            throw Refusal("enumeration needs " + std::to_string(p_) + "^" +
                          std::to_string(n_free_) + " assignments, over the budget of " +
                          std::to_string(budget));
        }
        std::vector<i64> x(n_free_, 0);
        std::map<int, Integer> by_dim;  // solution-space dimension -> fiber count
        while (true) {
            const int dim = fiber_dimension(x);
            if (dim >= 0) by_dim[dim] += 1;
            int i = 0;
            while (i < n_free_ && ++x[i] == p_) x[i++] = 0;
            if (i == n_free_) break;
        }
        Integer total = 0;
        for (const auto& [dim, n] : by_dim) {
            Integer pw;
            mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p_), dim);
            total += n * pw;
        }
        return total;
    }

private:
    struct Rel {
        int source, target;
        std::vector<std::pair<i64, Path>> terms;
    };

    Mat matrix(int a, const std::vector<i64>& x) const {
        const Arrow& ar = cd_.reduced.arrow(a);
        Mat m(d_[ar.target], d_[ar.source]);
        std::copy_n(x.begin() + offset_[a], m.a.size(), m.a.begin());
        return m;
    }

    Mat product(const Path& p, std::size_t from, std::size_t to, int id_size,
                const std::vector<i64>& x) const {
        if (from >= to) return Mat::identity(id_size);
        Mat r = matrix(p[from], x);
        for (std::size_t i = from + 1; i < to; ++i) r = mul(r, matrix(p[i], x), p_);
        return r;
    }

    // Dimension of the affine solution space in the linear entries, or -1 if empty.
    int fiber_dimension(const std::vector<i64>& x) const {
        std::vector<std::vector<i64>> rows;
        for (const auto& rel : rels_) {
            const int rt = d_[rel.target], rs = d_[rel.source];
            if (rt == 0 || rs == 0) continue;
            const std::size_t base = rows.size();
            rows.resize(base + static_cast<std::size_t>(rt) * rs, std::vector<i64>(n_lin_ + 1, 0));
            for (const auto& [c, path] : rel.terms) {
                std::size_t m = path.size();
                for (std::size_t i = 0; i < path.size(); ++i)
                    if (is_linear_[path[i]]) m = i;
                if (m == path.size()) {
                    const Mat pr = product(path, 0, path.size(), rs, x);
                    for (int i = 0; i < rt; ++i)
                        for (int j = 0; j < rs; ++j) {
                            auto& cell = rows[base + i * rs + j][n_lin_];
                            cell = mod(cell - c * pr.at(i, j), p_);  // moved to the right side
                        }
                    continue;
                }
                const Arrow& b = cd_.reduced.arrow(path[m]);
                const Mat left = product(path, 0, m, d_[b.target], x);
                const Mat right = product(path, m + 1, path.size(), d_[b.source], x);
                for (int i = 0; i < rt; ++i)
                    for (int j = 0; j < rs; ++j) {
                        auto& row = rows[base + i * rs + j];
                        for (int u = 0; u < left.cols; ++u) {
                            const i64 l = left.at(i, u);
                            if (l == 0) continue;
                            for (int v = 0; v < right.rows; ++v) {
                                const i64 r = right.at(v, j);
                                if (r == 0) continue;
                                auto& cell = row[offset_[path[m]] + u * d_[b.source] + v];
                                cell = (cell + c * l % p_ * r) % p_;
                            }
                        }
                    }
            }
        }
        auto [rank, ok] = solve_shape(rows, n_lin_, p_);
        return ok ? n_lin_ - rank : -1;
    }

    const CutData& cd_;
    DimVector d_;
    i64 p_;
    std::vector<int> offset_;
    std::vector<bool> is_linear_;
    int n_lin_ = 0, n_free_ = 0;
    std::vector<Rel> rels_;
};

bool valid_family(const std::vector<Relation>& rels, const std::vector<bool>& in) {
    for (const auto& r : rels)
        for (const auto& t : r.terms) {
            int hits = 0;
            for (int a : t.path) hits += in[a] ? 1 : 0;
            if (hits > 1) return false;
        }
    return true;
}

std::vector<int> choose_linear_family(const CutData& cd) {
    const int n = static_cast<int>(cd.reduced.num_arrows());
    std::vector<bool> in(n, false);
    if (n > 20) {
        // greedy from the last arrow backwards
        for (int a = n - 1; a >= 0; --a) {
            in[a] = true;
            if (!valid_family(cd.relations, in)) in[a] = false;
        }
    } else {
        std::uint32_t best = 0;
        int best_size = -1;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            for (int a = 0; a < n; ++a) in[a] = (mask >> a) & 1u;
            if (!valid_family(cd.relations, in)) continue;
            const int sz = __builtin_popcount(mask);
            // prefer larger families, then ones built from later arrows
            if (sz > best_size || (sz == best_size && mask > best)) {
                best = mask;
                best_size = sz;
            }
        }
        for (int a = 0; a < n; ++a) in[a] = (best >> a) & 1u;
    }
    std::vector<int> fam;
    for (int a = 0; a < n; ++a)
        if (in[a]) fam.push_back(a);
    return fam;
}

}  // namespace

CutData cut_reduce(const Quiver& q, const Potential& w, const std::vector<int>& cut) {
    CutData cd;
    cd.original = q;
    std::set<int> cut_set;
    for (int c : cut) {
        if (c < 0 || c >= static_cast<int>(q.num_arrows()))
            throw InvalidInput("cut arrow index out of range");
        cut_set.insert(c);
    }
    cd.cut.assign(cut_set.begin(), cut_set.end());
    for (const auto& [path, coeff] : w.terms()) {
        int hits = 0;
        for (int a : path) hits += cut_set.count(a) ? 1 : 0;
        if (hits != 1) {
            throw InvalidInput("potential term " + path_str(q, path) + " contains " +
                               std::to_string(hits) +
                               " cut arrows; every term needs exactly one");
        }
    }
    std::vector<int> to_reduced(q.num_arrows(), -1);
    std::vector<Arrow> arrows;
    for (std::size_t a = 0; a < q.num_arrows(); ++a) {
        if (cut_set.count(static_cast<int>(a))) continue;
        to_reduced[a] = static_cast<int>(arrows.size());
        cd.reduced_to_original.push_back(static_cast<int>(a));
        arrows.push_back(q.arrow(a));
    }
    cd.reduced = Quiver(q.vertices(), arrows);
    for (int c : cd.cut) {
        auto der = cyclic_derivative(w, c);
        if (der.empty()) continue;
        Relation rel;
        rel.cut_arrow = c;
        // dW/dc runs from target(c) to source(c)
        rel.source = q.arrow(c).target;
        rel.target = q.arrow(c).source;
        for (auto& t : der) {
            Path p;
            for (int a : t.path) p.push_back(to_reduced[a]);
            rel.terms.push_back({t.coeff, std::move(p)});
        }
        cd.relations.push_back(std::move(rel));
    }
    cd.linear_family = choose_linear_family(cd);
    for (int a = 0; a < static_cast<int>(cd.reduced.num_arrows()); ++a)
        if (!std::binary_search(cd.linear_family.begin(), cd.linear_family.end(), a))
            cd.free_family.push_back(a);
    return cd;
}

std::optional<std::vector<int>> find_cut(const Quiver& q, const Potential& w) {
    const int n = static_cast<int>(q.num_arrows());
    if (w.is_zero()) return std::vector<int>{};
    if (n > 24) throw InvalidInput("too many arrows to search for a cut; give one explicitly");
    std::optional<std::vector<int>> best;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        bool ok = true;
        for (const auto& [path, c] : w.terms()) {
            int hits = 0;
            for (int a : path) hits += (mask >> a) & 1u;
            if (hits != 1) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        std::vector<int> cut;
        for (int a = 0; a < n; ++a)
            if ((mask >> a) & 1u) cut.push_back(a);
        if (!best || cut.size() < best->size() || (cut.size() == best->size() && cut < *best))
            best = cut;
    }
    return best;
}

Integer count_reps(const CutData& cd, const DimVector& d, int p, const CountOptions& opt) {
    if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
    if (d.size() != cd.reduced.num_vertices()) throw InvalidInput("dimension vector size mismatch");
    Counter c(cd, d, p, !opt.brute_force);
    return c.count(opt.budget);
}

QPoly gauge_order(const DimVector& d) {
    QPoly r(1);
    for (std::size_t i = 0; i < d.size(); ++i)
        for (int j = 0; j < d[i]; ++j) r = r * (QPoly::q_power(d[i]) - QPoly::q_power(j));
    return r;
}

int count_degree_bound(const CutData& cd, const DimVector& d) {
    int s = 0;
    for (const auto& a : cd.reduced.arrows()) s += d[a.source] * d[a.target];
    return s;
}

std::vector<int> usable_primes(const CutData& cd, int n) {
    std::vector<int> out;
    for (int p = 2; static_cast<int>(out.size()) < n; ++p) {
        if (!is_prime(p)) continue;
        bool bad = false;
        for (const auto& r : cd.relations)
            for (const auto& t : r.terms)
                if (t.coeff.get_num() % p == 0 || t.coeff.get_den() % p == 0) bad = true;
        if (!bad) out.push_back(p);
    }
    return out;
}

StackCount stack_count_series(const CutData& cd, const DimVector& d, const CountOptions& opt) {
    StackCount sc;
    sc.dim = d;
    sc.degree_bound = count_degree_bound(cd, d);
    std::vector<int> primes = opt.primes;
    if (primes.empty()) {
        primes = usable_primes(cd, sc.degree_bound + 3);
    } else {
        std::set<int> seen;
        for (int p : primes) {
            if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
            if (!seen.insert(p).second) throw InvalidInput("prime list repeats " + std::to_string(p));
        }
        if (static_cast<int>(primes.size()) < sc.degree_bound + 2) {
            throw InvalidInput("need at least " + std::to_string(sc.degree_bound + 2) +
                               " primes for dimension vector " + d.str());
        }
    }
    const QPoly gl = gauge_order(d);
    // primes are independent; count them concurrently
    std::vector<std::future<Integer>> counts;
    for (int p : primes)
        counts.push_back(std::async(std::launch::async, [&cd, &d, &opt, p] {
            return count_reps(cd, d, p, opt);
        }));
    std::vector<Sample> samples;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const int p = primes[i];
        const Integer n = counts[i].get();
        sc.samples.push_back({p, n, Integer(gl(p).get_num())});
        samples.push_back({Rational(p), Rational(n)});
    }
    sc.count_poly = interpolate_polynomial(samples, sc.degree_bound);
    sc.e_series = QRational(sc.count_poly, gl);
    return sc;
}

QRational coha_coefficient_rational(const StackCount& sc, const CutData& cd, TateTwist tate) {
    const Quiver& twist_quiver = tate == TateTwist::CutQuiver ? cd.reduced : cd.original;
    const int chi = euler_form(twist_quiver, sc.dim, sc.dim);
    return invert_q(sc.e_series).times_q_power(-chi);
}

HalfLaurent coha_coefficient(const CutData& cd, const DimVector& d, const CountOptions& opt,
                             int order, TateTwist tate) {
    if (d.is_zero()) return HalfLaurent(1);
    const StackCount sc = stack_count_series(cd, d, opt);
    const int chi = euler_form(cd.original, d, d);
    return minus_sqrt_q_pow(chi) * series_of_rational(coha_coefficient_rational(sc, cd, tate),
                                                      order - chi);
}

TorusElement partition_function(const CutData& cd, const DimVector& box, const CountOptions& opt,
                                int order, TateTwist tate, TwistConvention twist) {
    auto q = std::make_shared<const Quiver>(cd.original);
    TorusElement z = TorusElement::one(q, box, twist);
    for (const auto& d : vectors_in_box(box)) {
        if (d.is_zero()) continue;
        z.set(d, coha_coefficient(cd, d, opt, order, tate));
    }
    return z;
}

QRational w0_coefficient_rational(const DimVector& d) {
    QPoly den(1);
    for (std::size_t i = 0; i < d.size(); ++i)
        for (int j = 1; j <= d[i]; ++j) den = den * (QPoly(1) - QPoly::q_power(j));
    return QRational(QPoly(1), den);
}

TorusElement zseries_w0(const Quiver& q, const DimVector& box, int order, TwistConvention twist) {
    auto qp = std::make_shared<const Quiver>(q);
    TorusElement z = TorusElement::one(qp, box, twist);
    for (const auto& d : vectors_in_box(box)) {
        if (d.is_zero()) continue;
        const int chi = euler_form(q, d, d);
        z.set(d, minus_sqrt_q_pow(chi) * series_of_rational(w0_coefficient_rational(d), order - chi));
    }
    return z;
}

}  // namespace bpskit
