#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "dch/graph.hpp"
#include "dch/persistence.hpp"

namespace dch {

enum class Method { Cubical, Flag };

std::string_view to_string(Method m);
Method parse_method(std::string_view name);

/// Kruskal merge event: the edge (a, b) joined two components at `value`.
struct MergeEvent {
    Vertex a = 0;
    Vertex b = 0;
    double value = 0.0;
};

struct StreamingStats {
    std::size_t stages = 0;
    std::size_t two_cells_generated = 0;
    std::size_t pivots = 0;
};

/// Persistence of a weighted-graph filtration in dimensions 0..max_dim
/// (max_dim <= 1), without materialising the full complex.
///
/// Edges are processed in stages of equal weight. For each stage the
/// 2-cells (2-cubes or triangles) whose largest edge lies in the stage are
/// generated lazily and reduced against the pivots found so far. Once the
/// first Betti number of the stage graph reaches zero the remaining 2-cells of
/// that stage are skipped: their boundaries are already boundaries, so they
/// cannot create pivots. Results equal those of `reduce` on the full
/// filtered complex.
class GraphPersistence {
public:
    GraphPersistence(const WeightedGraph& g, Method method, int max_dim = 1);

    const std::vector<PersistenceDiagram>& diagrams() const { return diagrams_; }
    const PersistenceDiagram& diagram(int dim) const { return diagrams_.at(dim); }
    const std::vector<MergeEvent>& merges() const { return merges_; }
    const StreamingStats& stats() const { return stats_; }

private:
    std::vector<PersistenceDiagram> diagrams_;
    std::vector<MergeEvent> merges_;
    StreamingStats stats_;
};

std::vector<PersistenceDiagram> cubical_persistence(const WeightedGraph& g, int max_dim = 1);

}  // namespace dch
