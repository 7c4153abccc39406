#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "dch/chain_complex.hpp"
#include "dch/cube.hpp"
#include "dch/graph.hpp"

namespace dch {

/// A 1-cube (from -> to). For simplicial 1-cells from < to.
struct OrientedEdge {
    Vertex from = 0;
    Vertex to = 0;
    bool operator==(const OrientedEdge&) const = default;
    auto operator<=>(const OrientedEdge&) const = default;
};

struct PersistencePair {
    double birth = 0.0;
    double death = kInfinity;
    /// Representative 1-cycle (dimension 1 only; may be empty otherwise).
    std::vector<OrientedEdge> cycle;

    bool is_infinite() const { return death == kInfinity; }
    /// death - birth with infinite deaths replaced by `span_end`.
    double length(double span_end) const { return (is_infinite() ? span_end : death) - birth; }
};

/// Multiset of birth/death pairs. Equality compares (birth, death) multisets
/// and ignores representatives.
struct PersistenceDiagram {
    int dimension = 0;
    std::vector<PersistencePair> pairs;

    std::size_t size() const { return pairs.size(); }
    bool empty() const { return pairs.empty(); }
    std::size_t infinite_count() const;
    /// (birth, death) pairs sorted ascending.
    std::vector<std::pair<double, double>> sorted_values() const;
    /// Number of pairs with birth <= r < death.
    std::size_t alive_at(double r) const;

    /// Sorts pairs by (birth, death, cycle) for deterministic output.
    void canonicalize();

    friend bool operator==(const PersistenceDiagram& a, const PersistenceDiagram& b) {
        return a.dimension == b.dimension && a.sorted_values() == b.sorted_values();
    }
};

/// Cube complex with filtration values. `complex` keeps the canonical
/// (lexicographic) order; everything else is indexed by filtration position,
/// i.e. cells sorted by (value, canonical index).
struct FilteredComplex {
    ChainComplexZ2 complex;
    std::vector<std::vector<std::uint32_t>> order;  // position -> canonical index
    std::vector<std::vector<double>> values;        // by position
    std::vector<SparseMatrixZ2> boundary;           // rows and columns by position
    std::vector<std::vector<OrientedEdge>> one_cells_by_position;  // [1] only; others empty

    int max_dim() const { return complex.max_dim; }
};

/// Max weight over the distinct-endpoint pairs joined by a cube edge; 0 when
/// the image is a single vertex. Throws ValidationError on a missing weight.
double cube_filtration_value(const WeightedGraph& g, std::span<const Vertex> assignment, int dim);

/// Enumerates cubes up to max_dim + 1 and sorts every dimension by value.
FilteredComplex assign_filtration(const WeightedGraph& g, int max_dim, const CubeLimits& limits = {});

/// Standard GF(2) persistence pairing from boundary matrices already in
/// filtration order. `low_boundary` is d_dim (ignored when dim == 0),
/// `high_boundary` is d_{dim+1}. `one_cells` supplies endpoints for dim-1
/// representatives. Zero-length pairs are dropped.
PersistenceDiagram persistence_from_boundaries(int dim, std::span<const double> low_values,
                                               const SparseMatrixZ2& low_boundary,
                                               std::span<const double> high_values,
                                               const SparseMatrixZ2& high_boundary,
                                               std::span<const OrientedEdge> one_cells = {});

/// Persistence diagram in dimension `dim` (0 <= dim <= fc.max_dim()).
/// Throws ValidationError if cells are not sorted by filtration value.
PersistenceDiagram reduce(const FilteredComplex& fc, int dim);

/// Betti number of the subcomplex of cells with value <= r, by direct rank
/// computation on that subcomplex.
std::size_t betti_at(const FilteredComplex& fc, double r, int dim);

/// Distinct filtration values of all cells, ascending.
std::vector<double> critical_values(const FilteredComplex& fc);

/// Percentage of [low, high] covered by the union of the diagram's
/// [birth, death) intervals.
double nontrivial_length(const PersistenceDiagram& diagram, double low, double high);

/// Bar with the largest length (infinite deaths replaced by span_end); ties go
/// to the earlier birth, then the smaller representative. Throws on empty input.
const PersistencePair& longest_bar(const PersistenceDiagram& diagram, double span_end = 1.0);

/// Splits a GF(2) 1-cycle into edge-disjoint simple cycles (vertex sequences,
/// first vertex not repeated). Orientation is discarded: u->v and v->u cancel.
/// Throws ValidationError when the projected edge set has an odd-degree vertex.
std::vector<std::vector<Vertex>> cycle_vertices(std::span<const OrientedEdge> representative);

}  // namespace dch
