#include <random>

#include "bpskit/error.hpp"
#include "bpskit/half_laurent.hpp"
#include "bpskit/qrational.hpp"
#include "doctest.h"

using namespace bpskit;

namespace {

QPoly poly(std::initializer_list<int> c) {
    std::vector<Rational> v;
    for (int x : c) v.emplace_back(x);
    return QPoly(std::move(v));
}

// Oracle: coefficients of (1-q)^{-k} are binomial(n+k-1, k-1).
Rational neg_binomial_coeff(int n, int k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n + k - 1, k - 1);
    return Rational(r);
}

HalfLaurent random_laurent(std::mt19937& rng, bool half_powers = true) {
    std::uniform_int_distribution<int> n_terms(0, 4), coeff(-5, 5), expo(-6, 6);
    HalfLaurent::Terms t;
    const int n = n_terms(rng);
    for (int i = 0; i < n; ++i) {
        int h = expo(rng);
        if (!half_powers) h *= 2;
        t[h] += coeff(rng);
    }
    return HalfLaurent::exact(t);
}

// Count points of {b1 a2 + b2 a1 = 0, a1 b1 = 0} and {b1 a1 = 0, b2 a2 = 0} in F_p^4.
int enumerate_markov_count(int p, bool marginal) {
    int count = 0;
    for (int a1 = 0; a1 < p; ++a1)
        for (int a2 = 0; a2 < p; ++a2)
            for (int b1 = 0; b1 < p; ++b1)
                for (int b2 = 0; b2 < p; ++b2) {
                    bool ok = marginal ? ((b1 * a2 + b2 * a1) % p == 0 && (a1 * b1) % p == 0)
                                       : ((b1 * a1) % p == 0 && (b2 * a2) % p == 0);
                    if (ok) ++count;
                }
    return count;
}

}  // namespace

TEST_CASE("HalfLaurent basics and printing") {
    const HalfLaurent p1 = HalfLaurent::exact({{-1, Rational(-1)}, {1, Rational(-1)}});
    CHECK(p1.str() == "-q^{-1/2}-q^{1/2}");
    CHECK(minus_sqrt_q_pow(3) == HalfLaurent::monomial(3, -1));
    CHECK(minus_sqrt_q_pow(-2) == HalfLaurent::monomial(-2, 1));
    CHECK((HalfLaurent::monomial(1, 2) * HalfLaurent::monomial(-1, 3)) == HalfLaurent(6));
    CHECK(HalfLaurent().str() == "0");
}

TEST_CASE("windows never extend precision") {
    const HalfLaurent a = HalfLaurent::series({{0, Rational(1)}, {2, Rational(1)}}, 6);
    const HalfLaurent b = HalfLaurent::series({{1, Rational(1)}}, 9);
    const HalfLaurent prod = a * b;
    // a's unknown tail starts at 8 and meets b's lowest term at 1
    REQUIRE(prod.window().has_value());
    CHECK(prod.window()->hi == 7);
    CHECK(prod.window()->lo == 1);
    const HalfLaurent sum = a + b;
    CHECK(sum.window()->hi == 6);
    // exact times windowed shifts the window by the exact object's lowest term
    const HalfLaurent shifted = HalfLaurent::monomial(-3, 1) * b;
    CHECK(shifted.window()->hi == 6);
    CHECK_THROWS(a.coeff(7));
}

TEST_CASE("series_of_rational") {
    SUBCASE("geometric series") {
        const HalfLaurent s = series_of_rational(QRational(1, poly({1, -1})), 6);
        CHECK(s.terms() == HalfLaurent::Terms{{0, Rational(1)}, {2, Rational(1)},
                                              {4, Rational(1)}, {6, Rational(1)}});
        CHECK(s.window()->lo == 0);
        CHECK(s.window()->hi == 6);
    }
    SUBCASE("-q^{1/2}(3-2q)/(1-q)^3 against the binomial-series oracle") {
        const QRational r(poly({3, -2}), pow(poly({1, -1}), 3));
        const HalfLaurent s = HalfLaurent::monomial(1, -1) * series_of_rational(r, 4);
        // oracle: coefficient of q^n in (3-2q)(1-q)^{-3}
        HalfLaurent::Terms expected;
        for (int n = 0; n <= 2; ++n) {
            Rational c = 3 * neg_binomial_coeff(n, 3);
            if (n >= 1) c -= 2 * neg_binomial_coeff(n - 1, 3);
            expected[2 * n + 1] = -c;
        }
        CHECK(s.terms() == expected);
        CHECK(s.coeff(1) == -3);
        CHECK(s.coeff(3) == -7);
        CHECK(s.coeff(5) == -12);
        CHECK(s.window()->hi == 5);
    }
    SUBCASE("q^2/((1-q)(1-q^2)) against a product of geometric series") {
        const QRational r(poly({0, 0, 1}), poly({1, -1}) * poly({1, 0, -1}));
        const HalfLaurent s = series_of_rational(r, 8);
        HalfLaurent::Terms expected;
        for (int i = 0; 2 + i <= 4; ++i)
            for (int j = 0; 2 + i + 2 * j <= 4; ++j) expected[2 * (2 + i + 2 * j)] += 1;
        CHECK(s.terms() == expected);
        CHECK(s.coeff(8) == 2);
        CHECK(s.window()->lo == 4);
    }
    SUBCASE("poles at zero give a negative lower edge") {
        const QRational r(poly({1}), poly({0, 1, -1}));  // 1/(q(1-q))
        const HalfLaurent s = series_of_rational(r, 2);
        CHECK(s.window()->lo == -2);
        CHECK(s.coeff(-2) == 1);
        CHECK(s.coeff(0) == 1);
    }
}

TEST_CASE("QRational canonical form and invert_q") {
    const QRational a(poly({0, -2, 3}), pow(poly({-1, 1}), 3));  // (3q^2-2q)/(q-1)^3
    const QRational b(poly({0, -4, 6}), pow(poly({-1, 1}), 3) * QPoly(2));
    CHECK(a == b);
    CHECK(a.den().leading() == 1);
    // q(3-2q)/(1-q)^3
    const QRational expected(poly({0, 3, -2}), pow(poly({1, -1}), 3));
    CHECK(a.invert_q() == expected);
    CHECK(a.invert_q().invert_q() == a);
    CHECK(invert_q(HalfLaurent::monomial(1, -1)) == HalfLaurent::monomial(-1, -1));
    const HalfLaurent pal = HalfLaurent::exact({{-1, Rational(-1)}, {1, Rational(-1)}});
    CHECK(invert_q(pal) == pal);
    CHECK_THROWS_AS(invert_q(HalfLaurent::series({{0, Rational(1)}}, 4)), std::domain_error);
    CHECK_THROWS(QRational(poly({1}), QPoly()));
}

TEST_CASE("interpolate_polynomial") {
    const std::vector<int> primes = {2, 3, 5, 7, 11};
    SUBCASE("marginal relations give 3q^2 - 2q") {
        std::vector<Sample> s;
        for (int p : primes) s.push_back({p, enumerate_markov_count(p, true)});
        CHECK(s[0].value == 8);
        CHECK(s[1].value == 21);
        CHECK(interpolate_polynomial(s, 2) == poly({0, -2, 3}));
    }
    SUBCASE("generic relations give (2q-1)^2") {
        std::vector<Sample> s;
        for (int p : primes) s.push_back({p, enumerate_markov_count(p, false)});
        CHECK(s[1].value == 25);
        CHECK(interpolate_polynomial(s, 2) == pow(poly({-1, 2}), 2));
    }
    SUBCASE("free count q^4 at bound 4") {
        std::vector<Sample> s;
        for (int p : {2, 3, 5, 7, 11, 13}) s.push_back({p, p * p * p * p});
        CHECK(interpolate_polynomial(s, 4) == QPoly::q_power(4));
    }
    SUBCASE("holdout mismatch is a refusal") {
        std::vector<Sample> s = {{2, 8}, {3, 21}, {5, 65}, {7, 134}};
        CHECK_THROWS_AS(interpolate_polynomial(s, 2), Refusal);
    }
    SUBCASE("too few samples") {
        std::vector<Sample> s = {{2, 8}, {3, 21}, {5, 65}};
        CHECK_THROWS_AS(interpolate_polynomial(s, 2), InvalidInput);
    }
    SUBCASE("reproduces every sample (property)") {
        std::mt19937 rng(7);
        std::uniform_int_distribution<int> c(-9, 9);
        for (int trial = 0; trial < 20; ++trial) {
            QPoly p = poly({c(rng), c(rng), c(rng), c(rng)});
            std::vector<Sample> s;
            for (int x : {2, 3, 5, 7, 11, 13}) s.push_back({x, p(x)});
            const QPoly fit = interpolate_polynomial(s, 3);
            for (const auto& smp : s) CHECK(fit(smp.point) == smp.value);
        }
    }
}

TEST_CASE("ring laws on random Laurent objects (property)") {
    std::mt19937 rng(20261018);
    for (int trial = 0; trial < 200; ++trial) {
        const HalfLaurent a = random_laurent(rng), b = random_laurent(rng), c = random_laurent(rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a * HalfLaurent(1) == a);
        CHECK(a - a == HalfLaurent());
        CHECK(a.invert_q().invert_q() == a);
    }
}

TEST_CASE("QRational ring laws and series multiplicativity (property)") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> c(-4, 4);
    auto rand_poly = [&](bool nonzero_const) {
        QPoly p = poly({c(rng), c(rng), c(rng)});
        if (nonzero_const && p.coeff(0) == 0) p += QPoly(1);
        return p;
    };
    for (int trial = 0; trial < 60; ++trial) {
        const QRational a(rand_poly(false), rand_poly(true));
        const QRational b(rand_poly(false), rand_poly(true));
        const QRational d(rand_poly(false), rand_poly(true));
        CHECK((a + b) * d == a * d + b * d);
        CHECK((a * b) * d == a * (b * d));
        CHECK(a.invert_q().invert_q() == a);
        const HalfLaurent lhs = series_of_rational(a * b, 20);
        const HalfLaurent rhs = series_of_rational(a, 20) * series_of_rational(b, 20);
        CHECK(lhs.agrees_with(rhs));
        CHECK(rhs.known_through() >= 0);
        for (int x : {2, 3, 7}) {
            if (a.den()(x) != 0 && d.den()(x) != 0) CHECK((a * d)(x) == a(x) * d(x));
        }
    }
}

TEST_CASE("series inverse") {
    const HalfLaurent one_minus_q = HalfLaurent::exact({{0, Rational(1)}, {2, Rational(-1)}});
    const HalfLaurent inv = one_minus_q.inverse(10);
    CHECK(inv == series_of_rational(QRational(1, poly({1, -1})), 10));
    const HalfLaurent w = HalfLaurent::series({{1, Rational(2)}, {3, Rational(1)}}, 9);
    const HalfLaurent wi = w.inverse(40);
    CHECK(wi.window()->hi == 7);
    CHECK((w * wi).agrees_with(HalfLaurent(1)));
}
