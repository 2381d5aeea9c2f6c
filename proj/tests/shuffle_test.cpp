#include <random>

#include "bpskit/dimred.hpp"
#include "bpskit/error.hpp"
#include "bpskit/presets.hpp"
#include "bpskit/shuffle.hpp"
#include "doctest.h"

using namespace bpskit;

namespace {

DimVector dv(int a, int b, int c) { return DimVector({a, b, c}); }

QPoly poly(std::initializer_list<int> c) {
    std::vector<Rational> v;
    for (int x : c) v.emplace_back(x);
    return QPoly(std::move(v));
}

HalfLaurent windowed(int sqrt_power, const QPoly& num, const QPoly& den, int order = kDefaultOrder) {
    return minus_sqrt_q_pow(sqrt_power) * series_of_rational(QRational(num, den), order - sqrt_power);
}

// (z_a - z_b)^2 in three variables
MPoly square_diff(int a, int b) {
    const MPoly d = MPoly::difference(3, a, b);
    return d * d;
}

}  // namespace

TEST_CASE("MPoly division") {
    const MPoly d = MPoly::difference(3, 0, 2);
    const MPoly p = square_diff(1, 0) * d;
    CHECK(p.divided_by_difference(0, 2) == square_diff(1, 0));
    CHECK_THROWS_AS(square_diff(1, 0).divided_by_difference(0, 2), std::logic_error);
    CHECK(square_diff(1, 0).str({"z1", "z2", "z3"}) == "z1^2 - 2*z1*z2 + z2^2");
}

TEST_CASE("shuffle products of generators") {
    const Quiver q = markov_quiver();
    const SymPoly z1 = generator(q, 0, 0), z2 = generator(q, 1, 0), z3 = generator(q, 2, 0);
    const SymPoly p13 = shuffle_product(q, z1, z3);
    CHECK(p13.dim == dv(1, 0, 1));
    CHECK(p13.poly == MPoly::constant(2, 1));
    const SymPoly p132 = shuffle_product(q, p13, z2);
    CHECK(p132.poly == square_diff(1, 0));
    const SymPoly p321 = shuffle_product(q, shuffle_product(q, z3, z2), z1);
    CHECK(p321.poly == square_diff(0, 2));
    CHECK(cohomological_degree(q, p321) == 1);

    // same-vertex products: antisymmetric kernel
    const SymPoly a = shuffle_product(q, z1, z1);
    CHECK(a.poly.is_zero());
    const SymPoly b = shuffle_product(q, z1, generator(q, 0, 1));
    CHECK(b.poly == MPoly::constant(2, 1));
    const SymPoly c = shuffle_product(q, generator(q, 0, 1), z1);
    CHECK(c.poly == MPoly::constant(2, -1));
}

TEST_CASE("shuffle associativity, symmetry and degree shift (property)") {
    const Quiver q = markov_quiver();
    std::mt19937 rng(31337);
    std::uniform_int_distribution<int> vert(0, 2), ex(0, 2);
    for (int trial = 0; trial < 25; ++trial) {
        const SymPoly f = generator(q, vert(rng), ex(rng));
        const SymPoly g = generator(q, vert(rng), ex(rng));
        const SymPoly h = generator(q, vert(rng), ex(rng));
        const SymPoly fg = shuffle_product(q, f, g);
        const SymPoly left = shuffle_product(q, fg, h);
        const SymPoly right = shuffle_product(q, f, shuffle_product(q, g, h));
        CHECK(left.dim == right.dim);
        CHECK(left.poly == right.poly);
        CHECK(is_vertex_symmetric(left));
        if (!fg.poly.is_zero()) {
            CHECK(cohomological_degree(q, fg) - cohomological_degree(q, f) -
                      cohomological_degree(q, g) ==
                  euler_form(q, g.dim, f.dim) - euler_form(q, f.dim, g.dim));
        }
    }
    // one product with two-variable factors
    const SymPoly x = shuffle_product(q, generator(q, 0, 1), generator(q, 1, 0));
    const SymPoly y = shuffle_product(q, generator(q, 2, 1), generator(q, 0, 0));
    const SymPoly z = generator(q, 1, 2);
    CHECK(shuffle_product(q, shuffle_product(q, x, y), z).poly ==
          shuffle_product(q, x, shuffle_product(q, y, z)).poly);
    CHECK(is_vertex_symmetric(shuffle_product(q, x, y)));
}

TEST_CASE("spherical and full dimensions at (1,1,1)") {
    const Quiver q = markov_quiver();
    const GradedDims sph = spherical_dimensions(q, dv(1, 1, 1), 7);
    CHECK(!sph.partial);
    for (int n = -5; n < 1; ++n) CHECK(sph.at(n) == 0);
    CHECK(sph.at(1) == 3);
    CHECK(sph.at(3) == 7);
    CHECK(sph.at(5) == 12);
    // the closed form -q^{-3/2}((1-q)^{-2} - 1 - 2q)(1-q)^{-1}
    const QRational inner = QRational(1, pow(poly({1, -1}), 2)) - QRational(poly({1, 2}));
    const HalfLaurent closed = windowed(-3, (inner * QRational(1, poly({1, -1}))).num(),
                                        (inner * QRational(1, poly({1, -1}))).den());
    CHECK(compare_spherical(closed, sph).kind == SphericalVerdict::Kind::Equal);

    const GradedDims full = coha_w0_dimensions(q, dv(1, 1, 1), 7);
    CHECK(full.at(-3) == 1);
    CHECK(full.at(-1) == 3);
    CHECK(full.at(1) == 6);
    for (int n = -3; n <= 7; ++n) CHECK(sph.at(n) <= full.at(n));
}

TEST_CASE("vertex lines") {
    const Quiver q = markov_quiver();
    for (int i = 0; i < 3; ++i) {
        const DimVector d = DimVector::unit(3, i);
        const GradedDims s = spherical_dimensions(q, d, 9);
        const GradedDims f = coha_w0_dimensions(q, d, 9);
        for (int n = -1; n <= 9; ++n) {
            const int expected = (n >= 1 && n % 2 == 1) ? 1 : 0;
            CHECK(s.at(n) == expected);
            CHECK(f.at(n) == expected);
        }
    }
}

TEST_CASE("spherical dims bounded by the full space on small vectors (property)") {
    const Quiver q = markov_quiver();
    for (const auto& d : {dv(1, 1, 0), dv(2, 1, 0), dv(1, 0, 2), dv(2, 1, 1)}) {
        const GradedDims s = spherical_dimensions(q, d, 5);
        const GradedDims f = coha_w0_dimensions(q, d, 5);
        for (int n = -12; n <= 5; ++n) CHECK(s.at(n) <= f.at(n));
    }
}

TEST_CASE("compare_spherical verdicts") {
    const Quiver q = markov_quiver();
    const GradedDims sph = spherical_dimensions(q, dv(1, 1, 1), 7);
    const HalfLaurent gen = windowed(1, poly({4, -4, 1}), pow(poly({1, -1}), 3));
    const SphericalVerdict vg = compare_spherical(gen, sph);
    CHECK(vg.kind == SphericalVerdict::Kind::CohaLarger);
    CHECK(vg.degree == 1);
    CHECK(vg.coha_dim == 4);
    CHECK(vg.spherical_dim == 3);

    const HalfLaurent marg = windowed(1, poly({3, -2}), pow(poly({1, -1}), 3));
    const SphericalVerdict vm = compare_spherical(marg, sph);
    CHECK(vm.kind == SphericalVerdict::Kind::Equal);
    CHECK(vm.compared_through == 7);

    const TorusElement z0 = zseries_w0(q, dv(1, 1, 1));
    CHECK(compare_spherical(z0.coeff(dv(1, 1, 1)), coha_w0_dimensions(q, dv(1, 1, 1), 11)).kind ==
          SphericalVerdict::Kind::Equal);

    // a wrong sign gives negative dimensions
    CHECK(compare_spherical(-marg, sph).kind == SphericalVerdict::Kind::Inconsistent);
}

TEST_CASE("G-invariant recombination") {
    auto q = std::make_shared<const Quiver>(markov_quiver());
    const TorusElement z = g_invariant_series(markov_ginv_table(), markov_stability(), q, dv(1, 1, 1));
    const HalfLaurent c = z.coeff(dv(1, 1, 1));
    CHECK(c.agrees_with(windowed(1, poly({3, -2}), pow(poly({1, -1}), 3))));
    const GradedDims sph = spherical_dimensions(*q, dv(1, 1, 1), 9);
    CHECK(compare_spherical(c, sph).kind == SphericalVerdict::Kind::Equal);
    CHECK(g_invariant_series({}, markov_stability(), q, dv(1, 1, 1)).coeffs() ==
          TorusElement::one(q, dv(1, 1, 1)).coeffs());
}
