#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bpskit/rational.hpp"

namespace bpskit {

struct Arrow {
    std::string name;
    int source;
    int target;
    friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// Finite directed multigraph. Vertices and arrows are addressed by index;
/// names are kept for I/O.
class Quiver {
public:
    Quiver() = default;
    /// Throws InvalidInput on duplicate names or undeclared endpoints.
    Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows);

    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_arrows() const { return arrows_.size(); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const Arrow& arrow(int i) const { return arrows_.at(i); }

    int vertex_index(const std::string& name) const;
    int arrow_index(const std::string& name) const;
    std::optional<int> find_arrow(const std::string& name) const;

    /// counts[i][j] = number of arrows i -> j.
    std::vector<std::vector<int>> arrow_counts() const;
    bool has_loop() const;

    friend bool operator==(const Quiver&, const Quiver&) = default;

private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
};

/// Dimension vector, one nonnegative entry per vertex.
class DimVector {
public:
    DimVector() = default;
    explicit DimVector(std::vector<int> entries);
    static DimVector zero(std::size_t n) { return DimVector(std::vector<int>(n, 0)); }
    static DimVector unit(std::size_t n, std::size_t i);

    std::size_t size() const { return e_.size(); }
    int operator[](std::size_t i) const { return e_[i]; }
    const std::vector<int>& entries() const { return e_; }
    int total() const;
    bool is_zero() const { return total() == 0; }

    /// Componentwise partial order.
    bool leq(const DimVector& o) const;
    DimVector operator+(const DimVector& o) const;
    DimVector operator-(const DimVector& o) const;  // throws if a component goes negative
    DimVector operator*(int k) const;

    std::string str() const;  // "(1,1,0)"

    friend auto operator<=>(const DimVector&, const DimVector&) = default;
    friend bool operator==(const DimVector&, const DimVector&) = default;

private:
    std::vector<int> e_;
};

/// Parses "1,1,0" (also accepts surrounding parentheses).
DimVector parse_dim_vector(const std::string& text);

/// Every d with 0 <= d <= box, sorted by total degree, then lexicographically
/// descending (so unit vectors come out as delta_1, delta_2, ...).
std::vector<DimVector> vectors_in_box(const DimVector& box);

int euler_form(const Quiver& q, const DimVector& d, const DimVector& e);

/// Stability condition: one rational weight per vertex.
using Stability = std::vector<Rational>;

Rational slope(const Stability& zeta, const DimVector& d);

struct GenericityReport {
    bool generic = true;
    std::optional<std::pair<DimVector, DimVector>> witness;
};

/// Checks genericity of zeta on the finite box: equal-slope nonzero vectors
/// must pair symmetrically under the Euler form.
GenericityReport is_generic(const Quiver& q, const Stability& zeta, const DimVector& box);

}  // namespace bpskit
