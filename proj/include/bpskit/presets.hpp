#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bpskit/potential.hpp"
#include "bpskit/quiver.hpp"

namespace bpskit {

/// A quiver with potential together with the data the pipelines need.
struct QuiverWithPotential {
    std::string name;
    Quiver quiver;
    Potential potential;
    Stability stability;
    /// Arrows used for dimensional reduction, when the input names them.
    std::optional<std::vector<int>> cut;
};

/// Vertices 1,2,3; arrows a1,a2: 1->2, b1,b2: 2->3, c1,c2: 3->1.
Quiver markov_quiver();

/// zeta = (1, eps, -1) with eps = 1/100 unless overridden.
Stability markov_stability(const Rational& eps = Rational(1, 100));

/// markov-gen, markov-marg, markov-case1, markov-case2, markov-case3, markov-w0.
const std::vector<std::string>& preset_names();
QuiverWithPotential preset(const std::string& name);

/// Builds a potential on q from (coefficient, printed arrow names) pairs.
Potential make_potential(const Quiver& q,
                         const std::vector<std::pair<Rational, std::vector<std::string>>>& terms);

}  // namespace bpskit
