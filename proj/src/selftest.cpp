#include "bpskit/selftest.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#include "bpskit/cubic_germ.hpp"
#include "bpskit/error.hpp"
#include "bpskit/pipeline.hpp"
#include "bpskit/presets.hpp"
#include "bpskit/qrational.hpp"
#include "bpskit/shuffle.hpp"

namespace bpskit {

namespace {

// Collects the first failed check of a criterion.
struct Checker {
    std::string failure;
    bool check(bool ok, const std::string& what) {
        if (!ok && failure.empty()) failure = what;
        return ok;
    }
};

DimVector dv(int a, int b, int c) { return DimVector({a, b, c}); }

QPoly poly(std::initializer_list<int> c) {
    std::vector<Rational> v;
    for (int x : c) v.emplace_back(x);
    return QPoly(std::move(v));
}

const QPoly& one_minus_q() {
    static const QPoly p = poly({1, -1});
    return p;
}

HalfLaurent windowed(int sqrt_power, const QPoly& num, const QPoly& den, int order) {
    return minus_sqrt_q_pow(sqrt_power) * series_of_rational(QRational(num, den), order - sqrt_power);
}

PipelineOptions pipeline(const SelftestOptions& st) {
    PipelineOptions p;
    p.box = dv(1, 1, 1);
    p.twist = st.twist;
    p.tate = st.tate;
    return p;
}

HalfLaurent lookup(const BPSTable& t, const DimVector& d) {
    const auto it = t.find(d);
    return it == t.end() ? HalfLaurent() : it->second;
}

std::string show(const HalfLaurent& f) { return f.str(); }

void low_degree_bps(const SelftestOptions& st, Checker& c) {
    const BPSTable t = bps_table(preset("markov-gen"), pipeline(st));
    const HalfLaurent p1 = HalfLaurent::exact({{-1, Rational(-1)}, {1, Rational(-1)}});
    for (int i = 0; i < 3; ++i) {
        const DimVector d = DimVector::unit(3, i);
        c.check(lookup(t, d) == HalfLaurent(1), "Omega" + d.str() + " = " + show(lookup(t, d)));
    }
    for (const auto& d : {dv(1, 1, 0), dv(0, 1, 1)})
        c.check(lookup(t, d) == p1, "Omega" + d.str() + " = " + show(lookup(t, d)));
    c.check(lookup(t, dv(1, 0, 1)).is_zero(), "Omega(1,0,1) = " + show(lookup(t, dv(1, 0, 1))));
}

void generic_coefficient(const SelftestOptions& st, Checker& c) {
    const PipelineOptions p = pipeline(st);
    const QuiverWithPotential gen = preset("markov-gen");
    const TorusElement z = partition_series(gen, p);
    const HalfLaurent expected = windowed(1, poly({4, -4, 1}), pow(one_minus_q(), 3), p.order);
    c.check(z.coeff(dv(1, 1, 1)).agrees_with(expected),
            "x^(1,1,1) coefficient " + show(z.coeff(dv(1, 1, 1))));
    // the lower slope factors alone contribute numerator 2 - q^2
    SlopeFactors f = factorize_by_slope(z, gen.stability);
    f.at(slope(gen.stability, dv(1, 1, 1))).set(dv(1, 1, 1), HalfLaurent());
    const HalfLaurent cross = ordered_product(f).coeff(dv(1, 1, 1));
    c.check(cross.agrees_with(windowed(1, poly({2, 0, -1}), pow(one_minus_q(), 3), p.order)),
            "cross terms " + show(cross) + " lack numerator 2-q^2");
}

void marginal_coefficient(const SelftestOptions& st, Checker& c) {
    const PipelineOptions p = pipeline(st);
    const QuiverWithPotential marg = preset("markov-marg");
    const HalfLaurent coeff = partition_series(marg, p).coeff(dv(1, 1, 1));
    c.check(coeff.agrees_with(windowed(1, poly({3, -2}), pow(one_minus_q(), 3), p.order)),
            "x^(1,1,1) coefficient " + show(coeff));
    const CutData cd = cut_reduce(marg.quiver, marg.potential, choose_cut(marg));
    const StackCount sc = stack_count_series(cd, dv(1, 1, 1), p.count);
    c.check(sc.count_poly == poly({0, -2, 3}), "variety count " + sc.count_poly.str());
    c.check(static_cast<int>(sc.samples.size()) > sc.count_poly.degree() + 1,
            "no holdout primes were checked");
}

void dependence(const SelftestOptions& st, Checker& c) {
    const PipelineOptions p = pipeline(st);
    const DependenceReport r = dependence_check(preset("markov-gen"), preset("markov-marg"), p);
    c.check(r.coeff_diff.agrees_with(windowed(1, 1, one_minus_q(), p.order)),
            "coefficient difference " + show(r.coeff_diff));
    c.check(r.omega_diff == HalfLaurent(1), "Omega difference " + show(r.omega_diff));
    c.check(r.omega_a == HalfLaurent(2), "Omega_gen(1,1,1) = " + show(r.omega_a));
}

GradedDims spherical_111() { return spherical_dimensions(markov_quiver(), dv(1, 1, 1), 7); }

void spherical(const SelftestOptions&, Checker& c) {
    const GradedDims s = spherical_111();
    c.check(!s.partial, "ordering enumeration was capped");
    for (int n = -12; n < 1; ++n)
        c.check(s.at(n) == 0, "dim S^" + std::to_string(n) + " = " + s.at(n).get_str());
    const std::vector<std::pair<int, int>> pinned = {{1, 3}, {3, 7}, {5, 12}};
    for (const auto& [n, v] : pinned)
        c.check(s.at(n) == v, "dim S^" + std::to_string(n) + " = " + s.at(n).get_str());
    const QRational inner = QRational(1, pow(one_minus_q(), 2)) - QRational(poly({1, 2}));
    const QRational closed = inner * QRational(1, one_minus_q());
    const SphericalVerdict v =
        compare_spherical(windowed(-3, closed.num(), closed.den(), kDefaultOrder), s);
    c.check(v.kind == SphericalVerdict::Kind::Equal && v.compared_through == s.n_max,
            "closed form: " + v.detail);
}

void not_spherical(const SelftestOptions& st, Checker& c) {
    const HalfLaurent coeff = partition_series(preset("markov-gen"), pipeline(st)).coeff(dv(1, 1, 1));
    const SphericalVerdict v = compare_spherical(coeff, spherical_111());
    c.check(v.kind == SphericalVerdict::Kind::CohaLarger, "verdict " + to_string(v.kind) + ": " + v.detail);
    c.check(v.degree == 1 && v.coha_dim == 4 && v.spherical_dim == 3,
            "degree " + std::to_string(v.degree) + ": " + v.coha_dim.get_str() + " vs " +
                v.spherical_dim.get_str());
}

void g_invariant(const SelftestOptions&, Checker& c) {
    auto q = std::make_shared<const Quiver>(markov_quiver());
    const TorusElement z = g_invariant_series(markov_ginv_table(), markov_stability(), q, dv(1, 1, 1));
    const SphericalVerdict v = compare_spherical(z.coeff(dv(1, 1, 1)), spherical_111());
    c.check(v.kind == SphericalVerdict::Kind::Equal, "verdict " + to_string(v.kind) + ": " + v.detail);
    c.check(v.compared_through >= 5, "compared only through degree " + std::to_string(v.compared_through));
}

void mutability(const SelftestOptions& st, Checker& c) {
    auto state = [&](const char* name) {
        const auto qp = preset(name);
        return QPState::make(qp.quiver, qp.potential, st.trunc);
    };
    for (const char* name : {"markov-case1", "markov-case2", "markov-case3"}) {
        const auto r = mutability_search(state(name), 1);
        c.check(r.obstructed && r.word.size() == 1, std::string(name) + " not obstructed at depth 1");
        c.check(has_two_cycle(mutate(state(name), 1).quiver).has_value(),
                std::string(name) + " has no 2-cycle after mutating at vertex 2");
    }
    for (const char* name : {"markov-gen", "markov-marg"}) {
        bool shaped = true;
        const auto r = mutability_search(state(name), st.mutation_depth,
                                         [&](const std::vector<int>&, const QPState& s) {
                                             shaped = shaped && markov_shape(s.quiver).has_value() &&
                                                      !has_two_cycle(s.quiver);
                                         });
        c.check(!r.obstructed && r.depth == st.mutation_depth,
                std::string(name) + " obstructed or search incomplete");
        c.check(shaped, std::string(name) + ": an intermediate quiver is not Markov-shaped");
        c.check(r.min_valid_to >= 3, std::string(name) + ": cubic terms not validated");
    }
    for (int k = 0; k < 3; ++k) {
        const QPState m = mutate(state("markov-marg"), k);
        c.check(classify(cubic_tensor(m.quiver, m.potential)) == GermType::T4,
                "W_marg mutated at vertex " + std::to_string(k + 1) + " is not type 4");
    }
}

Matrix2 random_invertible(std::mt19937& rng) {
    std::uniform_int_distribution<int> u(-5, 5), d(1, 3);
    while (true) {
        Matrix2 m;
        for (auto& row : m)
            for (auto& x : row) {
                x = Rational(u(rng), d(rng));
                x.canonicalize();
            }
        if (det(m) != 0) return m;
    }
}

void germs(const SelftestOptions& st, Checker& c) {
    auto tensor_of = [](std::initializer_list<std::array<int, 3>> ones) {
        CubicTensor t;
        for (const auto& [i, j, k] : ones) t.t[i][j][k] = 1;
        return t;
    };
    const std::array<std::pair<GermType, CubicTensor>, 5> canon = {
        {{GermType::T1, CubicTensor{}},
         {GermType::T2, tensor_of({{0, 0, 0}})},
         {GermType::T3, tensor_of({{0, 0, 0}, {0, 1, 1}})},
         {GermType::T4, tensor_of({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}})},
         {GermType::T5, tensor_of({{0, 0, 0}, {1, 1, 1}})}}};
    std::mt19937 rng(st.seed);
    for (const auto& [type, t] : canon) {
        c.check(classify(t) == type, "canonical " + to_string(type) + " misclassified");
        for (int trial = 0; trial < 200; ++trial) {
            const CubicTensor u =
                transform(t, random_invertible(rng), random_invertible(rng), random_invertible(rng));
            c.check(classify(u) == type, to_string(type) + " orbit element " + u.str() + " misclassified");
        }
    }
    std::uniform_int_distribution<int> u(-10, 10);
    int generic = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        CubicTensor t;
        for (auto& a : t.t)
            for (auto& b : a)
                for (auto& x : b) x = u(rng);
        if (classify(t) == GermType::T5) ++generic;
    }
    c.check(generic >= 9900, std::to_string(generic) + " of 10000 random tensors are T5");
}

void properties(const SelftestOptions& st, Checker& c) {
    std::mt19937 rng(st.seed);
    auto q = std::make_shared<const Quiver>(markov_quiver());
    const Stability zeta = markov_stability();
    std::uniform_int_distribution<int> coef(-3, 3), half(-3, 3), count(0, 2);
    auto random_element = [&](const DimVector& box) {
        TorusElement x(q, box, st.twist);
        for (const auto& d : vectors_in_box(box)) {
            HalfLaurent::Terms t;
            const int k = count(rng);
            for (int i = 0; i < k; ++i) t[half(rng)] += coef(rng);
            x.set(d, HalfLaurent::exact(t));
        }
        return x;
    };

    for (int trial = 0; trial < 20; ++trial) {
        const TorusElement a = random_element(dv(1, 1, 1)), b = random_element(dv(1, 1, 1)),
                           e = random_element(dv(1, 1, 1));
        c.check(((a * b) * e).coeffs() == (a * (b * e)).coeffs(), "quantum torus not associative");
    }
    std::map<Rational, std::vector<DimVector>> classes;
    for (const auto& d : vectors_in_box(dv(2, 2, 2)))
        if (!d.is_zero()) classes[slope(zeta, d)].push_back(d);
    for (const auto& [theta, ds] : classes)
        for (const auto& d : ds)
            for (const auto& e : ds) {
                TorusElement xd(q, dv(2, 2, 2), st.twist), xe(q, dv(2, 2, 2), st.twist);
                xd.set(d, 1);
                xe.set(e, 1);
                c.check((xd * xe).coeffs() == (xe * xd).coeffs(),
                        "x^" + d.str() + " and x^" + e.str() + " share a slope but do not commute");
            }

    // Exp/Log on slope lines
    for (const auto& d : {dv(1, 0, 0), dv(1, 1, 0), dv(1, 1, 1)}) {
        TorusElement f(q, d * 2, st.twist);
        for (int k = 1; k <= 2; ++k) {
            HalfLaurent::Terms t;
            for (int i = 0; i < 2; ++i) t[half(rng)] += coef(rng);
            f.set(d * k, HalfLaurent::exact(t) * point_stack_series());
        }
        c.check(pleth_log(pleth_exp(f, zeta), zeta).agrees_with(f), "Log(Exp f) != f on " + d.str());
    }

    // recombine then factorize and extract
    std::uniform_int_distribution<int> h(-4, 4);
    for (int trial = 0; trial < 8; ++trial) {
        BPSTable omega;
        for (const auto& d : vectors_in_box(dv(1, 1, 1))) {
            if (d.is_zero()) continue;
            HalfLaurent::Terms t;
            for (int i = 0; i < 2; ++i) t[h(rng)] += coef(rng);
            omega[d] = HalfLaurent::exact(t);
        }
        const TorusElement r = recombine(omega, zeta, q, dv(1, 1, 1), kDefaultOrder, st.twist);
        const BPSTable back = bps_invariants(r, zeta);
        for (const auto& [d, w] : omega)
            c.check(lookup(back, d) == w, "recombine/extract round trip fails at " + d.str());
        c.check(ordered_product(factorize_by_slope(r, zeta)).agrees_with(r),
                "factorize/product round trip fails");
    }

    // shuffle products stay polynomial, symmetric and associative
    std::uniform_int_distribution<int> vert(0, 2), ex(0, 2);
    for (int trial = 0; trial < 15; ++trial) {
        const SymPoly f = generator(*q, vert(rng), ex(rng));
        const SymPoly g = generator(*q, vert(rng), ex(rng));
        const SymPoly k = generator(*q, vert(rng), ex(rng));
        const SymPoly left = shuffle_product(*q, shuffle_product(*q, f, g), k);
        const SymPoly right = shuffle_product(*q, f, shuffle_product(*q, g, k));
        c.check(left.poly == right.poly, "shuffle product not associative");
        c.check(is_vertex_symmetric(left), "shuffle product not symmetric");
    }

    // linear fibers against brute force
    CountOptions brute;
    brute.brute_force = true;
    for (const auto& name : preset_names()) {
        const QuiverWithPotential qp = preset(name);
        const CutData cd = cut_reduce(qp.quiver, qp.potential, choose_cut(qp));
        for (const auto& d : vectors_in_box(dv(1, 1, 1)))
            for (int p : {2, 3})
                c.check(count_reps(cd, d, p) == count_reps(cd, d, p, brute),
                        name + ": fiber count differs from brute force at " + d.str() + ", q = " +
                            std::to_string(p));
    }

    // three routes to W = 0
    const QuiverWithPotential w0 = preset("markov-w0");
    const TorusElement closed = zseries_w0(w0.quiver, dv(1, 1, 1), kDefaultOrder, st.twist);
    const TorusElement counted = partition_function(
        cut_reduce(w0.quiver, w0.potential, choose_cut(w0)), dv(1, 1, 1), {}, kDefaultOrder, st.tate,
        st.twist);
    c.check(counted.agrees_with(closed), "W = 0 point counts differ from the closed form");
    for (const auto& d : vectors_in_box(dv(1, 1, 1))) {
        if (d.is_zero()) continue;
        const SphericalVerdict v =
            compare_spherical(closed.coeff(d), coha_w0_dimensions(w0.quiver, d, 9));
        c.check(v.kind == SphericalVerdict::Kind::Equal,
                "W = 0 series and symmetric polynomials disagree at " + d.str());
    }
}

struct Criterion {
    int id;
    const char* title;
    std::function<void(const SelftestOptions&, Checker&)> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {1, "low-degree BPS table of the generic potential", low_degree_bps},
        {2, "generic (1,1,1) coefficient and the 2-q^2 cross terms", generic_coefficient},
        {3, "marginal (1,1,1) coefficient and variety count 3q^2-2q", marginal_coefficient},
        {4, "dependence on the potential: differences and Omega_gen = 2", dependence},
        {5, "spherical dimensions 3, 7, 12 and their closed form", spherical},
        {6, "generic CoHA exceeds the spherical part in degree 1", not_spherical},
        {7, "G-invariant series matches the spherical dimensions", g_invariant},
        {8, "mutation obstructions and bounded infinite mutability", mutability},
        {9, "cubic germ classifier", germs},
        {10, "property suites", properties},
    };
    return all;
}

}  // namespace

std::vector<CriterionResult> run_selftest(const SelftestOptions& opt) {
    std::vector<CriterionResult> out;
    for (const auto& cr : criteria()) {
        if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), cr.id) == opt.only.end())
            continue;
        CriterionResult r;
        r.id = cr.id;
        r.title = cr.title;
        Checker c;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            cr.run(opt, c);
        } catch (const std::exception& e) {
            c.check(false, std::string("exception: ") + e.what());
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r.pass = c.failure.empty();
        r.detail = c.failure;
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_result(const CriterionResult& r) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " (%.2f s)", r.seconds);
    std::string s = std::string(r.pass ? "PASS" : "FAIL") + "  " + std::to_string(r.id) +
                    (r.id < 10 ? "   " : "  ") + r.title + buf;
    if (!r.pass) s += "\n      " + r.detail;
    return s;
}

}  // namespace bpskit
