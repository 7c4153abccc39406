#include "dch/flag.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "dch/error.hpp"
#include "dch/streaming.hpp"

namespace dch {

std::vector<Triangle> triangles(const WeightedGraph& g) {
    std::vector<Triangle> out;
    for (const Edge& e : g.edges()) {
        // Neighbour intersection above v keeps each triangle once (u < v < w).
        auto nu = g.neighbors(e.u);
        auto nv = g.neighbors(e.v);
        std::vector<Vertex> common;
        std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(), std::back_inserter(common));
        for (Vertex w : common) {
            if (w <= e.v) continue;
            double value = 0.0;
            if (g.has_weights())
                value = std::max({*g.weight(e.u, e.v), *g.weight(e.u, w), *g.weight(e.v, w)});
            out.push_back({{e.u, e.v, w}, value});
        }
    }
    std::sort(out.begin(), out.end(), [](const Triangle& a, const Triangle& b) { return a.vertices < b.vertices; });
    return out;
}

FlagFiltration build_flag_filtration(const WeightedGraph& g) {
    if (g.edge_count() > 0 && !g.has_weights()) throw ValidationError("flag filtration requires edge weights");
    FlagFiltration f;
    f.vertex_values.assign(g.vertex_count(), 0.0);
    std::vector<std::size_t> order(g.edge_count());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (g.edge_weight(a) != g.edge_weight(b)) return g.edge_weight(a) < g.edge_weight(b);
        return g.edge(a) < g.edge(b);
    });
    for (auto idx : order) {
        f.edges.push_back(g.edge(idx));
        f.edge_values.push_back(g.edge_weight(idx));
    }
    f.triangles = triangles(g);
    std::stable_sort(f.triangles.begin(), f.triangles.end(),
                     [](const Triangle& a, const Triangle& b) { return a.value < b.value; });
    return f;
}

std::vector<PersistenceDiagram> flag_persistence(const WeightedGraph& g, int max_dim) {
    return GraphPersistence(g, Method::Flag, max_dim).diagrams();
}

std::vector<PersistenceDiagram> flag_persistence_reference(const WeightedGraph& g, int max_dim) {
    if (max_dim < 0 || max_dim > 1) throw ValidationError("flag persistence supports dimensions 0 and 1");
    const FlagFiltration f = build_flag_filtration(g);
    std::map<Edge, std::uint32_t> edge_position;
    for (std::size_t k = 0; k < f.edges.size(); ++k) edge_position[f.edges[k]] = static_cast<std::uint32_t>(k);

    SparseMatrixZ2 d0{0, std::vector<Column>(g.vertex_count())};
    SparseMatrixZ2 d1{g.vertex_count(), {}};
    std::vector<OrientedEdge> one_cells;
    for (const Edge& e : f.edges) {
        d1.columns.push_back({e.u, e.v});
        one_cells.push_back({e.u, e.v});
    }
    SparseMatrixZ2 d2{f.edges.size(), {}};
    std::vector<double> triangle_values;
    for (const Triangle& t : f.triangles) {
        auto [a, b, c] = t.vertices;
        d2.columns.push_back(column_from_entries({edge_position[{a, b}], edge_position[{a, c}], edge_position[{b, c}]}));
        triangle_values.push_back(t.value);
    }
    std::vector<PersistenceDiagram> out;
    out.push_back(persistence_from_boundaries(0, f.vertex_values, d0, f.edge_values, d1));
    if (max_dim >= 1) out.push_back(persistence_from_boundaries(1, f.edge_values, d1, triangle_values, d2, one_cells));
    return out;
}

}  // namespace dch
