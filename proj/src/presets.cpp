#include "bpskit/presets.hpp"

#include "bpskit/error.hpp"

namespace bpskit {

Quiver markov_quiver() {
    return Quiver({"1", "2", "3"}, {{"a1", 0, 1},
                                    {"a2", 0, 1},
                                    {"b1", 1, 2},
                                    {"b2", 1, 2},
                                    {"c1", 2, 0},
                                    {"c2", 2, 0}});
}

Stability markov_stability(const Rational& eps) { return {Rational(1), eps, Rational(-1)}; }

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"markov-gen",   "markov-marg",
                                                   "markov-case1", "markov-case2",
                                                   "markov-case3", "markov-w0"};
    return names;
}

Potential make_potential(const Quiver& q,
                         const std::vector<std::pair<Rational, std::vector<std::string>>>& terms) {
    Potential w;
    for (const auto& [c, names] : terms) w.add(q, parse_path(q, names), c);
    return w;
}

QuiverWithPotential preset(const std::string& name) {
    QuiverWithPotential qp;
    qp.name = name;
    qp.quiver = markov_quiver();
    qp.stability = markov_stability();
    qp.cut = std::vector<int>{qp.quiver.arrow_index("c1"), qp.quiver.arrow_index("c2")};
    const Quiver& q = qp.quiver;
    if (name == "markov-gen") {
        qp.potential = make_potential(q, {{1, {"c1", "b1", "a1"}}, {1, {"c2", "b2", "a2"}}});
    } else if (name == "markov-marg") {
        qp.potential = make_potential(
            q, {{1, {"c1", "b1", "a2"}}, {1, {"c1", "b2", "a1"}}, {1, {"c2", "b1", "a1"}}});
    } else if (name == "markov-case1") {
        // no cubic part; a single sextic cycle stands in for W_{>=6}
        qp.potential = make_potential(q, {{1, {"c1", "b1", "a1", "c2", "b2", "a2"}}});
        qp.cut = std::vector<int>{qp.quiver.arrow_index("c1")};
    } else if (name == "markov-case2") {
        qp.potential = make_potential(q, {{1, {"c1", "b1", "a1"}}});
    } else if (name == "markov-case3") {
        qp.potential = make_potential(q, {{1, {"c1", "b1", "a1"}}, {1, {"c1", "b2", "a2"}}});
    } else if (name == "markov-w0") {
        // W = 0: any cut works; keep c1, c2 so counts match the cubic presets
    } else {
        throw InvalidInput("unknown preset '" + name + "'");
    }
    return qp;
}

}  // namespace bpskit
