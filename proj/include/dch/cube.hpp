#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dch/graph.hpp"

namespace dch {

enum class FaceSign { Minus, Plus };

/// A graph map from the discrete n-cube into a graph, stored as the image of
/// every cube vertex. Position k of `assignment` is the image of the bit
/// vector (x_1..x_n) with x_i = bit (i-1) of k.
struct SingularCube {
    int dimension = 0;
    std::vector<Vertex> assignment;

    bool operator==(const SingularCube&) const = default;
    auto operator<=>(const SingularCube&) const = default;
};

/// (n-1)-cube with coordinate i (1-based) fixed to 0 (Minus) or 1 (Plus):
/// face(A)(x_1..x_{n-1}) = A(x_1..x_{i-1}, e, x_i..x_{n-1}).
SingularCube face(const SingularCube& cube, int i, FaceSign sign);
/// Same as `face` on raw assignments; `out` receives 2^(dim-1) entries.
void face_into(std::span<const Vertex> assignment, int dim, int i, FaceSign sign,
               std::span<Vertex> out);

/// True iff some pair of opposite faces coincide. 0-cubes are never degenerate.
bool is_degenerate(const SingularCube& cube);
bool is_degenerate(std::span<const Vertex> assignment, int dim);

/// Whether the assignment is a graph map from the discrete cube into `g`.
bool is_singular_cube(const WeightedGraph& g, const SingularCube& cube);

/// Same-dimension cubes in flat storage, kept in lexicographic order of
/// assignments so lookups are binary searches.
class CubeSet {
public:
    explicit CubeSet(int dimension = 0);

    int dimension() const { return dimension_; }
    std::size_t width() const { return width_; }
    std::size_t size() const { return width_ == 0 ? 0 : data_.size() / width_; }
    bool empty() const { return data_.empty(); }

    std::span<const Vertex> operator[](std::size_t i) const {
        return {data_.data() + i * width_, width_};
    }
    SingularCube cube(std::size_t i) const;

    /// Appends a cube; callers must append in increasing lexicographic order.
    void push_back(std::span<const Vertex> assignment);
    std::optional<std::size_t> find(std::span<const Vertex> assignment) const;

private:
    int dimension_;
    std::size_t width_;
    std::vector<Vertex> data_;
};

struct CubeLimits {
    /// Cap on stored non-degenerate cubes in any one dimension.
    std::size_t max_cubes_per_dim = 5'000'000;
    /// Cap on graph maps visited (degenerate ones included) per dimension.
    std::size_t max_maps_visited = 100'000'000;
    /// Largest dimension that may be enumerated.
    int max_dimension = 6;
};

/// Non-degenerate cubes of every dimension 0..max_dim in lexicographic order.
/// Throws ResourceLimitError when a limit in `limits` is exceeded.
std::vector<CubeSet> enumerate_cubes(const WeightedGraph& g, int max_dim,
                                     const CubeLimits& limits = {});

}  // namespace dch
