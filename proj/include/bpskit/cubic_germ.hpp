#pragma once

#include <array>
#include <optional>
#include <string>

#include "bpskit/potential.hpp"
#include "bpskit/quiver.hpp"

namespace bpskit {

/// Arrow indices of a Markov-shaped quiver x -> y -> z -> x with two arrows
/// per step. Families are listed in the order c (z -> x), b (y -> z), a (x -> y).
struct MarkovFamilies {
    std::array<std::array<int, 2>, 3> arrows;
    std::array<int, 3> vertices;  ///< x, y, z
};

/// The family assignment when q has three vertices and exactly two arrows
/// along each edge of a 3-cycle, nothing else; x is vertex 0.
std::optional<MarkovFamilies> markov_shape(const Quiver& q);

/// t[i][j][k] = coefficient of c_i b_j a_k.
struct CubicTensor {
    std::array<std::array<std::array<Rational, 2>, 2>, 2> t{};
    friend bool operator==(const CubicTensor&, const CubicTensor&) = default;
    std::string str() const;
};

using Matrix2 = std::array<std::array<Rational, 2>, 2>;

/// Cubic part of w on a Markov-shaped quiver; longer and shorter terms are ignored.
CubicTensor cubic_tensor(const Quiver& q, const Potential& w, const MarkovFamilies& fam);
/// Same, finding the families with markov_shape. Throws InvalidInput otherwise.
CubicTensor cubic_tensor(const Quiver& q, const Potential& w);

/// Ranks of the flattenings along the c, b and a indices.
std::array<int, 3> mode_rank_profile(const CubicTensor& t);

/// Discriminant of det(x T_1 + y T_2) where T_i are the c-slices.
Rational hyperdet(const CubicTensor& t);

enum class GermType { T1, T2, T3, T4, T5 };
std::string to_string(GermType g);

/// Throws Error on a profile no tensor can have.
GermType classify(const CubicTensor& t);

/// t'[i][j][k] = sum Mc[i][i'] Mb[j][j'] Ma[k][k'] t[i'][j'][k'].
/// Throws InvalidInput on a singular matrix.
CubicTensor transform(const CubicTensor& t, const Matrix2& ma, const Matrix2& mb,
                      const Matrix2& mc);

/// Cyclic relabelling of the modes, t'[j][k][i] = t[i][j][k].
CubicTensor rotate_modes(const CubicTensor& t);

Rational det(const Matrix2& m);

}  // namespace bpskit
