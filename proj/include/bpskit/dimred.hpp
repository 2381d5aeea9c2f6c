#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "bpskit/half_laurent.hpp"
#include "bpskit/potential.hpp"
#include "bpskit/qrational.hpp"
#include "bpskit/qtorus.hpp"
#include "bpskit/quiver.hpp"

namespace bpskit {

/// One relation dW/dc, with paths written in arrow indices of the reduced quiver.
struct Relation {
    int cut_arrow;  ///< index in the original quiver
    int source;     ///< vertex where every path starts
    int target;     ///< vertex where every path ends
    std::vector<PathTerm> terms;
};

/// A potential cut by a set of arrows, reduced to the quiver without them.
struct CutData {
    Quiver original;
    std::vector<int> cut;              ///< arrow indices in `original`, ascending
    Quiver reduced;                    ///< original minus the cut arrows
    std::vector<int> reduced_to_original;
    std::vector<Relation> relations;   ///< nonzero derivatives only
    /// Arrows of `reduced` occurring at most once in every relation term.
    /// Relations are then affine in these arrows once the rest are fixed.
    std::vector<int> linear_family;
    std::vector<int> free_family;
};

/// Throws InvalidInput unless every term of w contains exactly one cut arrow
/// exactly once.
CutData cut_reduce(const Quiver& q, const Potential& w, const std::vector<int>& cut);

/// Smallest cut (ties broken by the lexicographically smallest index set) or
/// nullopt if the potential admits none.
std::optional<std::vector<int>> find_cut(const Quiver& q, const Potential& w);

struct CountOptions {
    std::vector<int> primes;                  ///< empty: first degree_bound + 3 usable primes
    std::uint64_t budget = 100'000'000;       ///< enumerated assignments per prime
    bool brute_force = false;                 ///< ignore the linear family
};

/// Number of representations of the reduced quiver of dimension d over F_p
/// satisfying every relation.
Integer count_reps(const CutData& cd, const DimVector& d, int p, const CountOptions& opt = {});

/// Order of GL_d(F_q) as a polynomial in q.
QPoly gauge_order(const DimVector& d);

struct CountSample {
    int prime;
    Integer count;
    Integer gauge;
};

struct StackCount {
    DimVector dim;
    int degree_bound = 0;
    QPoly count_poly;    ///< P(q), interpolated and holdout-checked
    QRational e_series;  ///< P(q) / |GL_d(q)|
    std::vector<CountSample> samples;
};

/// Sum over the reduced quiver's arrows of d_source * d_target.
int count_degree_bound(const CutData& cd, const DimVector& d);

/// First n primes not dividing any relation coefficient.
std::vector<int> usable_primes(const CutData& cd, int n);

StackCount stack_count_series(const CutData& cd, const DimVector& d, const CountOptions& opt = {});

/// Which Euler form supplies the Tate twist q^{-chi(d,d)} in front of E_d(1/q).
/// Only CutQuiver reproduces the known values; the other exists so the
/// self-test can show that the checks catch a wrong twist.
enum class TateTwist { CutQuiver, FullQuiver };

/// x^d coefficient of Z: (-q^{1/2})^{chi_Q(d,d)} q^{-chi_{Q'}(d,d)} E_d(1/q),
/// known through q^{order/2}.
HalfLaurent coha_coefficient(const CutData& cd, const DimVector& d, const CountOptions& opt = {},
                             int order = kDefaultOrder, TateTwist tate = TateTwist::CutQuiver);

/// Exact rational form of the same coefficient without the (-q^{1/2})^chi prefactor.
QRational coha_coefficient_rational(const StackCount& sc, const CutData& cd,
                                    TateTwist tate = TateTwist::CutQuiver);

/// Z restricted to the box, one coha_coefficient per vector.
TorusElement partition_function(const CutData& cd, const DimVector& box,
                                const CountOptions& opt = {}, int order = kDefaultOrder,
                                TateTwist tate = TateTwist::CutQuiver,
                                TwistConvention twist = TwistConvention::Antisymmetric);

/// Z for W = 0: (-q^{1/2})^{chi(d,d)} / prod_i prod_{j=1}^{d_i} (1 - q^j).
TorusElement zseries_w0(const Quiver& q, const DimVector& box, int order = kDefaultOrder,
                        TwistConvention twist = TwistConvention::Antisymmetric);

/// Exact rational part of the W = 0 coefficient (without the prefactor).
QRational w0_coefficient_rational(const DimVector& d);

}  // namespace bpskit
