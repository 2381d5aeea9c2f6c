#include <random>

#include "bpskit/cubic_germ.hpp"
#include "bpskit/error.hpp"
#include "bpskit/presets.hpp"
#include "doctest.h"

using namespace bpskit;

namespace {

CubicTensor tensor_of(std::initializer_list<std::array<int, 3>> ones) {
    CubicTensor t;
    for (const auto& [i, j, k] : ones) t.t[i][j][k] = 1;
    return t;
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

const Matrix2 kIdentity = {{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}};
const Matrix2 kSwap = {{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}};

std::array<std::pair<GermType, CubicTensor>, 5> canonical() {
    return {{{GermType::T1, CubicTensor{}},
             {GermType::T2, tensor_of({{0, 0, 0}})},
             {GermType::T3, tensor_of({{0, 0, 0}, {0, 1, 1}})},
             {GermType::T4, tensor_of({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}})},
             {GermType::T5, tensor_of({{0, 0, 0}, {1, 1, 1}})}}};
}

}  // namespace

TEST_CASE("tensor extraction from presets") {
    const Quiver q = markov_quiver();
    CHECK(cubic_tensor(q, preset("markov-gen").potential) == tensor_of({{0, 0, 0}, {1, 1, 1}}));
    CHECK(cubic_tensor(q, preset("markov-marg").potential) ==
          tensor_of({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}));
    CHECK(cubic_tensor(q, preset("markov-case1").potential) == CubicTensor{});
    const auto fam = markov_shape(q);
    REQUIRE(fam.has_value());
    CHECK(fam->arrows[0] == std::array<int, 2>{q.arrow_index("c1"), q.arrow_index("c2")});
    CHECK(fam->arrows[2] == std::array<int, 2>{q.arrow_index("a1"), q.arrow_index("a2")});
    CHECK(!markov_shape(Quiver({"1", "2", "3"}, {{"x", 0, 1}})).has_value());
}

TEST_CASE("profiles and hyperdeterminant") {
    using P = std::array<int, 3>;
    CHECK(mode_rank_profile(CubicTensor{}) == P{0, 0, 0});
    CHECK(mode_rank_profile(tensor_of({{0, 0, 0}})) == P{1, 1, 1});
    CHECK(mode_rank_profile(tensor_of({{0, 0, 0}, {0, 1, 1}})) == P{1, 2, 2});
    CHECK(hyperdet(tensor_of({{0, 0, 0}, {1, 1, 1}})) == 1);
    CHECK(hyperdet(tensor_of({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}})) == 0);
    CHECK(hyperdet(CubicTensor{}) == 0);
}

TEST_CASE("canonical classification and presets") {
    for (const auto& [type, t] : canonical()) CHECK(classify(t) == type);
    const Quiver q = markov_quiver();
    CHECK(classify(cubic_tensor(q, preset("markov-gen").potential)) == GermType::T5);
    CHECK(classify(cubic_tensor(q, preset("markov-marg").potential)) == GermType::T4);
    CHECK(classify(cubic_tensor(q, preset("markov-case3").potential)) == GermType::T3);
    CHECK(classify(cubic_tensor(q, preset("markov-case2").potential)) == GermType::T2);
    CHECK(classify(cubic_tensor(q, preset("markov-case1").potential)) == GermType::T1);
}

TEST_CASE("transforms") {
    const CubicTensor gen = tensor_of({{0, 0, 0}, {1, 1, 1}});
    CHECK(transform(gen, kIdentity, kIdentity, kIdentity) == gen);
    CHECK(transform(gen, kSwap, kSwap, kSwap) == gen);
    Matrix2 singular = {{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}}};
    CHECK_THROWS_AS(transform(gen, singular, kIdentity, kIdentity), InvalidInput);
}

TEST_CASE("orbit invariance and relative invariance (property)") {
    std::mt19937 rng(2718);
    for (const auto& [type, t] : canonical()) {
        for (int trial = 0; trial < 200; ++trial) {
            const Matrix2 ma = random_invertible(rng), mb = random_invertible(rng),
                          mc = random_invertible(rng);
            const CubicTensor u = transform(t, ma, mb, mc);
            CHECK(classify(u) == type);
            const Rational scale = det(ma) * det(mb) * det(mc);
            CHECK(hyperdet(u) == scale * scale * hyperdet(t));
        }
        CHECK(classify(rotate_modes(t)) == type);
        CHECK(classify(rotate_modes(rotate_modes(t))) == type);
    }
}

TEST_CASE("no profile has exactly one full-rank mode (exhaustive over small entries)") {
    CubicTensor t;
    for (int code = 0; code < 6561; ++code) {
        int c = code;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) {
                    t.t[i][j][k] = (c % 3) - 1;
                    c /= 3;
                }
        const auto p = mode_rank_profile(t);
        int low = 0;
        for (int r : p) low += r <= 1 ? 1 : 0;
        CHECK((low < 2 || (p[0] <= 1 && p[1] <= 1 && p[2] <= 1)));
        CHECK_NOTHROW(classify(t));
    }
}

TEST_CASE("random integer tensors are generic") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> u(-10, 10);
    int generic = 0;
    const int n = 10000;
    for (int trial = 0; trial < n; ++trial) {
        CubicTensor t;
        for (auto& a : t.t)
            for (auto& b : a)
                for (auto& x : b) x = u(rng);
        if (classify(t) == GermType::T5) ++generic;
    }
    CHECK(generic >= 9900);
}
