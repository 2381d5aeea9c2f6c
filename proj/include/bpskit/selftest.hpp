#pragma once

#include <string>
#include <vector>

#include "bpskit/dimred.hpp"
#include "bpskit/mutation.hpp"
#include "bpskit/qtorus.hpp"

namespace bpskit {

struct SelftestOptions {
    /// Deliberate perturbations; the pinned criteria must then fail.
    TwistConvention twist = TwistConvention::Antisymmetric;
    TateTwist tate = TateTwist::CutQuiver;
    int mutation_depth = 4;
    int trunc = kDefaultTrunc;
    unsigned seed = 20240611;
    std::vector<int> only;  ///< criterion ids to run; empty runs all ten
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    double seconds = 0;
    std::string detail;  ///< first failed check or the exception text
};

std::vector<CriterionResult> run_selftest(const SelftestOptions& opt = {});

/// "PASS  3  marginal coefficient ... (0.41 s)"
std::string format_result(const CriterionResult& r);

}  // namespace bpskit
