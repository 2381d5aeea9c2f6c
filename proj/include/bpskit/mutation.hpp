#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "bpskit/potential.hpp"
#include "bpskit/quiver.hpp"

namespace bpskit {

inline constexpr int kDefaultTrunc = 9;

/// A quiver with potential under mutation. Terms longer than `trunc` are
/// dropped; `valid_to` is the length through which the stored potential is
/// known to be exact.
struct QPState {
    Quiver quiver;
    Potential potential;
    int trunc = kDefaultTrunc;
    int valid_to = kDefaultTrunc;
    /// Shortest length at which a term may have been lost, if any was.
    std::optional<int> lost_from;

    /// Throws InvalidInput if w has a term longer than trunc.
    static QPState make(Quiver q, Potential w, int trunc = kDefaultTrunc);
};

/// Reverses the arrows at k and adds a composite "[b.a]" for every pair
/// a: i -> k, b: k -> j. Throws InvalidInput on a loop at k.
QPState premutate(const QPState& s, int k);

/// Splits off every 2-cycle carried by a nonzero quadratic term, smallest
/// term first. Throws Refusal if the substitutions fail to settle.
QPState reduce(const QPState& s);

/// Any pair of arrows i -> j, j -> i with i != j.
std::optional<std::pair<int, int>> has_two_cycle(const Quiver& q);

QPState mutate(const QPState& s, int k);

struct MutabilityResult {
    bool obstructed = false;
    std::vector<int> word;  ///< vertex indices, applied left to right
    int depth = 0;          ///< depth fully explored when clear
    int nodes = 0;          ///< number of mutations performed
    int min_valid_to = 0;   ///< smallest valid_to over every visited state
};

using MutationVisitor = std::function<void(const std::vector<int>& word, const QPState&)>;

/// Depth-first search over mutation words without immediate repeats,
/// vertices tried in increasing order. Stops at the first word whose reduced
/// quiver has a 2-cycle. The visitor sees every reduced state reached.
MutabilityResult mutability_search(const QPState& s, int depth,
                                   const MutationVisitor& visit = nullptr);

}  // namespace bpskit
