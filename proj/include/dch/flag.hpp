#pragma once

#include <array>
#include <vector>

#include "dch/graph.hpp"
#include "dch/persistence.hpp"

namespace dch {

struct Triangle {
    std::array<Vertex, 3> vertices{};  // ascending
    double value = 0.0;                 // max of the three edge weights
};

/// All 3-cliques, ordered lexicographically by vertices. Unweighted graphs
/// give value 0.
std::vector<Triangle> triangles(const WeightedGraph& g);

/// Clique complex truncated at triangles, each dimension sorted by
/// (value, lexicographic vertices).
struct FlagFiltration {
    std::vector<double> vertex_values;
    std::vector<Edge> edges;
    std::vector<double> edge_values;
    std::vector<Triangle> triangles;
};

FlagFiltration build_flag_filtration(const WeightedGraph& g);

/// Flag-complex persistence for dimensions 0..max_dim (max_dim <= 1).
std::vector<PersistenceDiagram> flag_persistence(const WeightedGraph& g, int max_dim = 1);

/// Same result computed by full matrix reduction of `build_flag_filtration`.
std::vector<PersistenceDiagram> flag_persistence_reference(const WeightedGraph& g, int max_dim = 1);

}  // namespace dch
