#include "bpskit/cubic_germ.hpp"
#include "bpskit/error.hpp"
#include "bpskit/mutation.hpp"
#include "bpskit/presets.hpp"
#include "doctest.h"

using namespace bpskit;

namespace {

QPState state(const std::string& name) {
    const auto qp = preset(name);
    return QPState::make(qp.quiver, qp.potential);
}

std::vector<std::vector<int>> counts(const QPState& s) { return s.quiver.arrow_counts(); }

GermType germ(const QPState& s) { return classify(cubic_tensor(s.quiver, s.potential)); }

}  // namespace

TEST_CASE("premutation at vertex 2") {
    const QPState s = state("markov-marg");
    const QPState p = premutate(s, 1);
    const auto c = counts(p);
    CHECK(c[0][2] == 4);
    CHECK(c[1][0] == 2);
    CHECK(c[2][1] == 2);
    CHECK(c[2][0] == 2);
    CHECK(c[0][1] == 0);
    CHECK(c[1][2] == 0);
    const Quiver& q = p.quiver;
    CHECK(q.arrow(q.arrow_index("[b1.a2]")).source == 0);
    CHECK(q.arrow(q.arrow_index("a1*")).target == 0);

    Potential expected = make_potential(q, {{1, {"c1", "[b1.a2]"}},
                                            {1, {"c1", "[b2.a1]"}},
                                            {1, {"c2", "[b1.a1]"}}});
    for (const char* b : {"b1", "b2"})
        for (const char* a : {"a1", "a2"})
            expected.add(q,
                         parse_path(q, {std::string("[") + b + "." + a + "]", std::string(a) + "*",
                                        std::string(b) + "*"}),
                         1);
    CHECK(p.potential == expected);
    CHECK(has_two_cycle(p.quiver).has_value());

    // W = 0 leaves only the composite triangles
    const QPState z = premutate(state("markov-w0"), 1);
    CHECK(z.potential.size() == 4);
    for (const auto& [path, coeff] : z.potential.terms()) {
        CHECK(path.size() == 3);
        CHECK(coeff == 1);
    }
}

TEST_CASE("premutation output is a sum of cycles (property)") {
    for (const auto& name : preset_names()) {
        const QPState s = state(name);
        for (int k = 0; k < 3; ++k) {
            const QPState p = premutate(s, k);
            for (const auto& [path, coeff] : p.potential.terms()) CHECK(is_cycle(p.quiver, path));
        }
    }
}

TEST_CASE("loops block premutation") {
    Quiver q({"1", "2"}, {{"l", 0, 0}, {"x", 0, 1}});
    CHECK_THROWS_AS(premutate(QPState::make(q, {}), 0), InvalidInput);
    CHECK_NOTHROW(premutate(QPState::make(q, {}), 1));
}

TEST_CASE("reduce") {
    const QPState s = state("markov-marg");
    CHECK(reduce(s).potential == s.potential);
    CHECK(reduce(s).quiver == s.quiver);
    CHECK(!has_two_cycle(s.quiver));

    const QPState m = mutate(s, 1);
    CHECK(!has_two_cycle(m.quiver));
    CHECK(markov_shape(m.quiver).has_value());
    CHECK(m.quiver.num_arrows() == 6);
    CHECK(germ(m) == GermType::T4);
    CHECK(m.valid_to >= 3);

    // a single 2-cycle with a linear coupling: W = xy + x p, p a path y-parallel
    Quiver q({"1", "2", "3"}, {{"x", 1, 0}, {"y", 0, 1}, {"u", 0, 2}, {"v", 2, 1}});
    Potential w;
    w.add(q, {0, 1}, 2);
    w.add(q, {0, 3, 2}, 1);
    const QPState r = reduce(QPState::make(q, w));
    CHECK(r.quiver.num_arrows() == 2);
    CHECK(r.potential.is_zero());
}

TEST_CASE("cubic-only premutations leave 2-cycles") {
    for (const char* name : {"markov-case1", "markov-case2", "markov-case3"}) {
        CAPTURE(name);
        const QPState m = mutate(state(name), 1);
        const auto w = has_two_cycle(m.quiver);
        REQUIRE(w.has_value());
        CHECK(m.quiver.arrow(w->first).source == m.quiver.arrow(w->second).target);
    }
    int cycles = 0;
    const QPState m = mutate(state("markov-case2"), 1);
    const auto c = counts(m);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) cycles += c[i][j] * c[j][i];
    CHECK(cycles >= 2);
}

TEST_CASE("marginal potential keeps type 4 at every vertex") {
    for (int k = 0; k < 3; ++k) {
        const QPState m = mutate(state("markov-marg"), k);
        CHECK(!has_two_cycle(m.quiver));
        CHECK(germ(m) == GermType::T4);
    }
    for (int k = 0; k < 3; ++k) CHECK(germ(mutate(state("markov-gen"), k)) == GermType::T5);
}

TEST_CASE("double mutation restores counts and germ type (property)") {
    for (const char* name : {"markov-gen", "markov-marg"}) {
        const QPState s = state(name);
        for (int k = 0; k < 3; ++k) {
            const QPState back = mutate(mutate(s, k), k);
            CHECK(counts(back) == counts(s));
            CHECK(germ(back) == germ(s));
        }
    }
}

TEST_CASE("mutability search") {
    for (const char* name : {"markov-case1", "markov-case2", "markov-case3"}) {
        CAPTURE(name);
        const auto res = mutability_search(state(name), 1);
        CHECK(res.obstructed);
        CHECK(res.word.size() == 1);
    }
    for (const char* name : {"markov-gen", "markov-marg"}) {
        CAPTURE(name);
        bool shapes = true;
        const auto res = mutability_search(state(name), 4, [&](const auto&, const QPState& st) {
            shapes = shapes && markov_shape(st.quiver).has_value() && !has_two_cycle(st.quiver);
        });
        CHECK(!res.obstructed);
        CHECK(res.depth == 4);
        CHECK(res.nodes == 3 + 6 + 12 + 24);
        CHECK(shapes);
        CHECK(res.min_valid_to >= 3);
    }
    CHECK_THROWS_AS(mutability_search(state("markov-gen"), 0), InvalidInput);
}
