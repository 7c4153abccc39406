#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dch {

using Vertex = std::uint32_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Point2 {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Point2&) const = default;
};

/// Undirected edge stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;
    bool operator==(const Edge&) const = default;
    auto operator<=>(const Edge&) const = default;
};

/// Simple undirected graph with implicit reflexivity.
///
/// Vertices are dense indices 0..n-1. Self-loops are never stored: every vertex
/// is related to itself by definition, and `adjacent_or_equal` is the relation
/// used by all map-validation logic. Edge weights are optional but, when
/// present, every edge carries one.
class WeightedGraph {
public:
    WeightedGraph() = default;
    explicit WeightedGraph(std::size_t vertex_count);

    /// Adds an unweighted edge. Rejects self-pairs, duplicates, and mixing
    /// weighted with unweighted edges.
    void add_edge(Vertex u, Vertex v);
    void add_edge(Vertex u, Vertex v, double weight);

    std::size_t vertex_count() const { return vertex_count_; }
    std::size_t edge_count() const { return edges_.size(); }
    std::span<const Edge> edges() const { return edges_; }
    const Edge& edge(std::size_t index) const { return edges_[index]; }

    bool has_weights() const { return !weights_.empty(); }
    double edge_weight(std::size_t index) const;
    std::span<const double> weights() const { return weights_; }

    bool has_edge(Vertex u, Vertex v) const;
    /// Reflexive adjacency: true when u == v or {u,v} is an edge.
    bool adjacent_or_equal(Vertex u, Vertex v) const { return u == v || has_edge(u, v); }
    std::optional<std::size_t> edge_index(Vertex u, Vertex v) const;
    std::optional<double> weight(Vertex u, Vertex v) const;

    /// Sorted open neighbourhood.
    std::span<const Vertex> neighbors(Vertex u) const { return adjacency_[u]; }
    std::size_t degree(Vertex u) const { return adjacency_[u].size(); }

    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<Point2>& coords() const { return coords_; }
    bool has_labels() const { return !labels_.empty(); }
    bool has_coords() const { return !coords_.empty(); }
    void set_labels(std::vector<std::string> labels);
    void set_coords(std::vector<Point2> coords);
    /// Label of `v`, or its decimal index when no labels are attached.
    std::string vertex_name(Vertex v) const;

private:
    void insert_edge(Vertex u, Vertex v);

    std::size_t vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<double> weights_;
    std::vector<std::vector<Vertex>> adjacency_;
    // Dense n*n table of edge index + 1 (0 = absent).
    std::vector<std::uint32_t> index_table_;
    std::vector<std::string> labels_;
    std::vector<Point2> coords_;
};

/// Row-major square matrix of pairwise distances.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// Vertex assignment source -> target.
struct GraphMap {
    const WeightedGraph* source = nullptr;
    const WeightedGraph* target = nullptr;
    std::vector<Vertex> assignment;
};

WeightedGraph line_graph(std::size_t n);
WeightedGraph cycle_graph(std::size_t n);
/// Vertex (g, h) of the product gets index g * |H| + h.
WeightedGraph box_product(const WeightedGraph& g, const WeightedGraph& h);
/// Vertex k corresponds to the bit vector (x_1..x_n) with x_i = bit i-1 of k.
WeightedGraph hypercube(std::size_t n);
/// rows x cols lattice (vertex count, not path length), unit weights,
/// coordinates (col, row). Vertex index = row * cols + col.
WeightedGraph grid_graph(std::size_t rows, std::size_t cols);
/// Complete graph on n vertices without weights.
WeightedGraph complete_graph(std::size_t n);
/// The 10-vertex graph with a single two-dimensional discrete hole.
WeightedGraph greene_sphere();

bool is_graph_map(const WeightedGraph& source, const WeightedGraph& target,
                  std::span<const Vertex> assignment);
bool is_graph_map(const GraphMap& f);

/// Dijkstra from every vertex. Unit weights when the graph has none,
/// infinity for disconnected pairs.
DistanceMatrix all_pairs_distances(const WeightedGraph& g);
/// Single-source version of the above.
std::vector<double> shortest_distances(const WeightedGraph& g, Vertex source);

/// Max distance from x; throws ValidationError if the graph is disconnected.
double eccentricity(const WeightedGraph& g, Vertex x);

/// Number of connected components.
std::size_t component_count(const WeightedGraph& g);

/// Subgraph on the same vertices keeping edges with weight <= r.
WeightedGraph threshold_graph(const WeightedGraph& g, double r);

/// Edge list CSV with header `u,v[,weight]`. The vertex count is the larger of
/// `min_vertices` and max endpoint + 1.
WeightedGraph read_edge_csv(const std::filesystem::path& path, std::size_t min_vertices = 0);
/// Vertex metadata CSV with header `id,label,x,y`; attaches labels/coords.
void read_vertex_csv(const std::filesystem::path& path, WeightedGraph& g);
void write_edge_csv(const std::filesystem::path& path, const WeightedGraph& g);
void write_vertex_csv(const std::filesystem::path& path, const WeightedGraph& g);

}  // namespace dch
