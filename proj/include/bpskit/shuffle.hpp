#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bpskit/half_laurent.hpp"
#include "bpskit/qtorus.hpp"
#include "bpskit/quiver.hpp"

namespace bpskit {

/// Exponent vector of a monomial.
using Monomial = std::vector<int>;

/// Sparse polynomial over Q in a fixed number of variables.
class MPoly {
public:
    using Terms = std::map<Monomial, Rational>;

    MPoly() = default;
    explicit MPoly(int num_vars) : n_(num_vars) {}
    static MPoly constant(int num_vars, const Rational& c);
    static MPoly monomial(Monomial m, const Rational& c = 1);
    /// z_a - z_b
    static MPoly difference(int num_vars, int a, int b);

    int num_vars() const { return n_; }
    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    Rational coeff(const Monomial& m) const;
    /// Total degree of a homogeneous polynomial; throws if it is not homogeneous.
    int homogeneous_degree() const;

    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly& operator*=(const Rational& c);
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend bool operator==(const MPoly&, const MPoly&) = default;

    /// Multiplies by z_a - z_b.
    MPoly times_difference(int a, int b) const;
    /// Exact quotient by z_a - z_b; throws std::logic_error on a remainder.
    MPoly divided_by_difference(int a, int b) const;
    /// Moves variable i to position image[i] in a polynomial with `num_vars` variables.
    MPoly renamed(const std::vector<int>& image, int num_vars) const;
    /// Swaps two variables.
    MPoly swapped(int a, int b) const;

    /// Variables printed as names[i].
    std::string str(const std::vector<std::string>& names) const;

private:
    int n_ = 0;
    Terms t_;
};

/// Element of the W = 0 shuffle algebra: a polynomial in the variables
/// z_{i,1..d_i}, vertex-major, symmetric within each vertex.
struct SymPoly {
    DimVector dim;
    MPoly poly;
};

/// First variable index of each vertex.
std::vector<int> variable_offsets(const DimVector& d);

/// Variable names "z1", "z2" (one variable per vertex) or "z1_2" in general.
std::vector<std::string> variable_names(const DimVector& d);

/// Symmetry under every permutation within each vertex group.
bool is_vertex_symmetric(const SymPoly& f);

/// Generator z_i^k in the dimension-delta_i piece.
SymPoly generator(const Quiver& q, int vertex, int k);

/// f o g. Arrows a: i -> j contribute (z''_j - z'_i) where z' are the
/// variables of f (sources) and z'' those of g.
SymPoly shuffle_product(const Quiver& q, const SymPoly& f, const SymPoly& g);

/// Cohomological degree 2 deg + chi(d,d) of a homogeneous element.
int cohomological_degree(const Quiver& q, const SymPoly& f);

struct GradedDims {
    DimVector dim;
    int n_max = 0;                ///< dimensions known for every degree <= n_max
    std::map<int, Integer> dims;  ///< nonzero dimensions only
    bool partial = false;         ///< enumeration cap hit; dims are lower bounds
    Integer at(int n) const;
};

struct SphericalOptions {
    long max_orderings = 10'000;
};

/// Graded dimensions of the span of all products of |d| generators.
GradedDims spherical_dimensions(const Quiver& q, const DimVector& d, int n_max,
                                const SphericalOptions& opt = {});

/// Graded dimensions of the full space of vertex-symmetric polynomials.
GradedDims coha_w0_dimensions(const Quiver& q, const DimVector& d, int n_max);

/// Dimensions read off an x^d coefficient: the coefficient of (-q^{1/2})^n.
/// Throws Refusal on a negative or non-integer value.
GradedDims dimensions_from_series(const HalfLaurent& coeff, const DimVector& d, int n_max);

struct SphericalVerdict {
    enum class Kind { Equal, CohaLarger, Inconsistent };
    Kind kind = Kind::Equal;
    int degree = 0;      ///< first degree where the two differ
    Integer coha_dim;    ///< at that degree
    Integer spherical_dim;
    int compared_through = 0;
    std::string detail;
};

std::string to_string(SphericalVerdict::Kind k);

/// Compares dim Coha^n implied by an x^d coefficient with the spherical
/// dimensions, degree by degree up to the smaller of the two windows.
SphericalVerdict compare_spherical(const HalfLaurent& zcoeff, const GradedDims& sph);

/// Recombines a G-invariant BPS table into a partition function.
TorusElement g_invariant_series(const BPSTable& omega_ginv, const Stability& zeta,
                                std::shared_ptr<const Quiver> quiver, const DimVector& box,
                                int order = kDefaultOrder);

/// BPS table of the Markov quiver on (1,1,1) with the invariant part
/// Omega_{(1,1,1)} = 1 and every lower invariant as for the cubic presets.
BPSTable markov_ginv_table();

}  // namespace bpskit
