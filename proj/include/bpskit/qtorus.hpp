#pragma once

#include <map>
#include <memory>
#include <string>

#include "bpskit/half_laurent.hpp"
#include "bpskit/quiver.hpp"

namespace bpskit {

/// Exponent of (-q^{1/2}) in x^d x^e = twist(d,e) x^{d+e}.
///
/// Antisymmetric, chi(d,e) - chi(e,d), is the convention every result in this
/// library is pinned to. The other two exist so the self-test can show that
/// the pinned identities detect a wrong twist.
enum class TwistConvention { Antisymmetric, Euler, NegatedEuler };

std::string to_string(TwistConvention t);

/// Element of the quantum torus of a quiver truncated to the box d <= box.
/// Vectors outside the box form an ideal, so truncated products are exact on
/// the box.
class TorusElement {
public:
    using Coeffs = std::map<DimVector, HalfLaurent>;

    TorusElement(std::shared_ptr<const Quiver> quiver, DimVector box,
                 TwistConvention twist = TwistConvention::Antisymmetric);

    static TorusElement one(std::shared_ptr<const Quiver> quiver, DimVector box,
                            TwistConvention twist = TwistConvention::Antisymmetric);

    const Quiver& quiver() const { return *quiver_; }
    const std::shared_ptr<const Quiver>& quiver_ptr() const { return quiver_; }
    const DimVector& box() const { return box_; }
    TwistConvention twist_convention() const { return twist_; }
    const Coeffs& coeffs() const { return coeffs_; }

    HalfLaurent coeff(const DimVector& d) const;
    /// Throws if d is outside the box.
    void set(const DimVector& d, HalfLaurent c);

    /// Same quiver, box and twist.
    bool compatible(const TorusElement& o) const;
    /// Restriction to a smaller box.
    TorusElement restricted(const DimVector& box) const;

    /// twist(d, e) as a monomial in q^{1/2}.
    HalfLaurent twist(const DimVector& d, const DimVector& e) const;
    int twist_exponent(const DimVector& d, const DimVector& e) const;

    TorusElement& operator+=(const TorusElement& o);
    TorusElement& operator-=(const TorusElement& o);
    friend TorusElement operator+(TorusElement a, const TorusElement& b) { return a += b; }
    friend TorusElement operator-(TorusElement a, const TorusElement& b) { return a -= b; }
    TorusElement scaled(const Rational& c) const;

    /// Coefficients agree on every vector of the box within common windows.
    bool agrees_with(const TorusElement& o) const;

    std::string str() const;

private:
    std::shared_ptr<const Quiver> quiver_;
    DimVector box_;
    TwistConvention twist_;
    Coeffs coeffs_;
};

/// sum over d+e=f of twist(d,e) x_d y_e. Throws InvalidInput on a quiver, box
/// or convention mismatch.
TorusElement twisted_mul(const TorusElement& x, const TorusElement& y);
inline TorusElement operator*(const TorusElement& x, const TorusElement& y) {
    return twisted_mul(x, y);
}

/// Refined BPS invariants keyed by dimension vector.
using BPSTable = std::map<DimVector, HalfLaurent>;

/// Plethystic exponential of an element with zero constant term whose support
/// lies in one slope class of zeta.
TorusElement pleth_exp(const TorusElement& f, const Stability& zeta);

/// Inverse of pleth_exp; needs constant term 1 and single-slope support.
TorusElement pleth_log(const TorusElement& big_f, const Stability& zeta);

/// Slope factors of Z, keyed by slope. Multiplying them in ascending slope
/// order (left to right) gives Z back.
using SlopeFactors = std::map<Rational, TorusElement>;

SlopeFactors factorize_by_slope(const TorusElement& z, const Stability& zeta);

/// Product of the factors in ascending slope order.
TorusElement ordered_product(const SlopeFactors& factors);

/// Half-exponent margin at the top of a window that must be free of nonzero
/// coefficients for a BPS invariant to count as a Laurent polynomial.
inline constexpr int kIntegralityGuard = 4;

/// Omega_d for every nonzero d in the factor's box with slope theta:
/// [Log factor]_d * (1-q)/(-q^{1/2}). Throws Refusal when a coefficient reaches
/// into the guard band at the top of its window.
BPSTable extract_bps(const TorusElement& factor, const Stability& zeta, const Rational& theta,
                     int guard = kIntegralityGuard);

/// Factorize and extract every slope.
BPSTable bps_invariants(const TorusElement& z, const Stability& zeta,
                        int guard = kIntegralityGuard);

/// Ordered product of Exp(sum Omega_d x^d (-q^{1/2})/(1-q)) over slopes.
TorusElement recombine(const BPSTable& omegas, const Stability& zeta,
                       std::shared_ptr<const Quiver> quiver, const DimVector& box,
                       int order = kDefaultOrder,
                       TwistConvention twist = TwistConvention::Antisymmetric);

/// (-q^{1/2})/(1-q) through q^{order/2}.
HalfLaurent point_stack_series(int order = kDefaultOrder);

}  // namespace bpskit
