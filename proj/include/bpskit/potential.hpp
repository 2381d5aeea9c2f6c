#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bpskit/quiver.hpp"
#include "bpskit/rational.hpp"

namespace bpskit {

/// A path as arrow indices written left to right the way words are printed:
/// the rightmost arrow is applied first, so {c1, b1, a1} means a1, then b1,
/// then c1.
using Path = std::vector<int>;

/// Consecutive arrows compose (source of each = target of the one to its right).
bool is_path(const Quiver& q, const Path& p);
/// A path that closes up.
bool is_cycle(const Quiver& q, const Path& p);
/// Lexicographically minimal rotation.
Path canonical_rotation(const Path& cycle);

Path parse_path(const Quiver& q, const std::vector<std::string>& arrow_names);
std::string path_str(const Quiver& q, const Path& p);

/// Linear combination of cycles modulo rotation. Terms are stored under their
/// canonical rotation with like terms merged and zeros dropped.
class Potential {
public:
    using Terms = std::map<Path, Rational>;

    Potential() = default;

    /// Throws InvalidInput if `cycle` is not a cycle of `q`.
    void add(const Quiver& q, const Path& cycle, const Rational& coeff);
    /// Adds a term already known to be a valid cycle.
    void add_unchecked(const Path& cycle, const Rational& coeff);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    std::size_t max_length() const;
    /// Part of the potential made of cycles of exactly this length.
    Potential homogeneous_part(std::size_t length) const;

    Potential& operator+=(const Potential& o);
    Potential& operator*=(const Rational& c);
    friend Potential operator+(Potential a, const Potential& b) { return a += b; }
    friend bool operator==(const Potential&, const Potential&) = default;

    std::string str(const Quiver& q) const;

private:
    Terms terms_;
};

struct PathTerm {
    Rational coeff;
    Path path;
    friend bool operator==(const PathTerm&, const PathTerm&) = default;
};

/// Cyclic derivative with respect to one arrow: every occurrence of the
/// arrow in every term contributes the complementary path, read starting
/// just after the occurrence. Like paths are merged; order is by path.
std::vector<PathTerm> cyclic_derivative(const Potential& w, int arrow);

struct Grading {
    std::vector<Integer> weight;  ///< per arrow
    Integer degree;               ///< common degree of every term, > 0
};

/// Finds nonnegative arrow weights putting every term of w in one positive
/// degree, or nullopt when none exist.
std::optional<Grading> is_quasihomogeneous(const Quiver& q, const Potential& w);

}  // namespace bpskit
