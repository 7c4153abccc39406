#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "dch/cube.hpp"
#include "dch/graph.hpp"
#include "dch/random.hpp"

namespace dch::testing {

inline WeightedGraph random_graph(Rng& rng, std::size_t n, double edge_prob) {
    WeightedGraph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng.uniform() < edge_prob) g.add_edge(u, v);
    return g;
}

/// Weights drawn from {1..distinct} / distinct so that ties are common.
inline WeightedGraph random_weighted_graph(Rng& rng, std::size_t n, double edge_prob, std::size_t distinct) {
    WeightedGraph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng.uniform() < edge_prob)
                g.add_edge(u, v, double(1 + rng.below(distinct)) / double(distinct));
    return g;
}

inline WeightedGraph random_complete_weighted(Rng& rng, std::size_t n) {
    WeightedGraph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v, rng.uniform());
    return g;
}

/// Independent connected-component count by union-find.
inline std::size_t union_find_components(const WeightedGraph& g) {
    std::vector<std::size_t> parent(g.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t count = g.vertex_count();
    for (const Edge& e : g.edges()) {
        const auto a = find(e.u), b = find(e.v);
        if (a != b) {
            parent[a] = b;
            --count;
        }
    }
    return count;
}

/// Every assignment V^(2^d), filtered by graph-map and non-degeneracy.
inline std::vector<std::vector<Vertex>> naive_cubes(const WeightedGraph& g, int d) {
    const std::size_t width = std::size_t{1} << d;
    const std::size_t n = g.vertex_count();
    const WeightedGraph q = hypercube(static_cast<std::size_t>(d));
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> a(width, 0);
    if (n == 0) return out;
    while (true) {
        if (is_graph_map(q, g, a) && (d == 0 || !is_degenerate(a, d))) out.push_back(a);
        std::size_t k = width;
        while (k > 0) {
            --k;
            if (++a[k] < n) break;
            a[k] = 0;
            if (k == 0) return out;
        }
    }
}

}  // namespace dch::testing
