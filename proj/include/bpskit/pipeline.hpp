#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bpskit/dimred.hpp"
#include "bpskit/presets.hpp"
#include "bpskit/qtorus.hpp"

namespace bpskit {

struct PipelineOptions {
    DimVector box = DimVector({1, 1, 1});
    int order = kDefaultOrder;
    CountOptions count;
    TwistConvention twist = TwistConvention::Antisymmetric;
    TateTwist tate = TateTwist::CutQuiver;
};

/// The cut used for point counting: the one stored with the input, else the
/// smallest one. Throws InvalidInput when the potential admits none.
std::vector<int> choose_cut(const QuiverWithPotential& qp);

/// Z on the box: the closed form when W = 0, point counts otherwise.
TorusElement partition_series(const QuiverWithPotential& qp, const PipelineOptions& opt);

/// Throws InvalidInput when the stability is missing or not generic on the box.
BPSTable bps_table(const QuiverWithPotential& qp, const PipelineOptions& opt);

struct DependenceReport {
    DimVector dim;
    HalfLaurent coeff_a, coeff_b, coeff_diff;
    HalfLaurent omega_a, omega_b, omega_diff;
};

/// Differences of the x^box coefficient and of Omega_box between two inputs
/// on the same quiver.
DependenceReport dependence_check(const QuiverWithPotential& a, const QuiverWithPotential& b,
                                  const PipelineOptions& opt);

/// Human-readable conventions behind every number the pipelines print.
std::vector<std::pair<std::string, std::string>> convention_report(const PipelineOptions& opt);

}  // namespace bpskit
