#include <doctest.h>

#include <filesystem>
#include <map>
#include <set>

#include "dch/error.hpp"
#include "dch/graph.hpp"
#include "helpers.hpp"

using namespace dch;
using dch::testing::random_graph;
using dch::testing::random_weighted_graph;
using dch::testing::union_find_components;

namespace {

std::set<Edge> edge_set(const WeightedGraph& g) { return {g.edges().begin(), g.edges().end()}; }

/// Edge set after relabelling vertices with `map`.
std::set<Edge> mapped_edges(const WeightedGraph& g, const std::vector<Vertex>& map) {
    std::set<Edge> out;
    for (const Edge& e : g.edges()) {
        Vertex a = map[e.u], b = map[e.v];
        if (a > b) std::swap(a, b);
        out.insert({a, b});
    }
    return out;
}

}  // namespace

TEST_CASE("line and cycle graphs") {
    const auto i3 = line_graph(3);
    CHECK(i3.vertex_count() == 4);
    CHECK(i3.edge_count() == 3);
    const auto i0 = line_graph(0);
    CHECK(i0.vertex_count() == 1);
    CHECK(i0.edge_count() == 0);
    const auto i5 = line_graph(5);
    for (Vertex v = 1; v < 5; ++v) CHECK(i5.degree(v) == 2);

    CHECK(cycle_graph(5).edge_count() == 5);
    CHECK(cycle_graph(3).edge_count() == 3);
    const auto c4 = cycle_graph(4);
    for (Vertex v = 0; v < 4; ++v) CHECK(c4.degree(v) == 2);
    CHECK_THROWS_AS(cycle_graph(2), ValidationError);
}

TEST_CASE("edge insertion rules") {
    WeightedGraph g(3);
    CHECK_THROWS_AS(g.add_edge(1, 1), ValidationError);
    CHECK_THROWS_AS(g.add_edge(0, 3), ValidationError);
    g.add_edge(0, 1, 0.5);
    CHECK_THROWS_AS(g.add_edge(1, 0, 0.5), ValidationError);
    CHECK_THROWS_AS(g.add_edge(1, 2), ValidationError);
    CHECK_THROWS_AS(g.add_edge(1, 2, -1.0), ValidationError);
    CHECK(g.adjacent_or_equal(2, 2));
    CHECK(g.weight(1, 0) == 0.5);
    CHECK_FALSE(g.weight(1, 2).has_value());
}

TEST_CASE("box products") {
    const auto sq = box_product(line_graph(1), line_graph(1));
    CHECK(sq.vertex_count() == 4);
    CHECK(sq.edge_count() == 4);
    for (Vertex v = 0; v < 4; ++v) CHECK(sq.degree(v) == 2);

    const auto cube = box_product(sq, line_graph(1));
    CHECK(cube.vertex_count() == 8);
    CHECK(cube.edge_count() == 12);

    const auto c5 = cycle_graph(5);
    CHECK(edge_set(box_product(c5, line_graph(0))) == edge_set(c5));
}

TEST_CASE("box product commutes and associates up to re-indexing") {
    Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const auto g = random_graph(rng, 1 + rng.below(4), 0.5);
        const auto h = random_graph(rng, 1 + rng.below(4), 0.5);
        const auto k = random_graph(rng, 1 + rng.below(3), 0.5);
        const std::size_t ng = g.vertex_count(), nh = h.vertex_count(), nk = k.vertex_count();

        // (a, b) in G x H has index a*nh + b; in H x G it is b*ng + a.
        std::vector<Vertex> swap_map(ng * nh);
        for (std::size_t a = 0; a < ng; ++a)
            for (std::size_t b = 0; b < nh; ++b) swap_map[a * nh + b] = Vertex(b * ng + a);
        CHECK(mapped_edges(box_product(g, h), swap_map) == edge_set(box_product(h, g)));

        // ((a, b), c) and (a, (b, c)) share the index (a*nh + b)*nk + c.
        CHECK(edge_set(box_product(box_product(g, h), k)) == edge_set(box_product(g, box_product(h, k))));
    }
}

TEST_CASE("hypercubes") {
    CHECK(hypercube(0).vertex_count() == 1);
    CHECK(hypercube(2).edge_count() == 4);
    CHECK(hypercube(3).edge_count() == 12);
    WeightedGraph iterated = line_graph(0);
    for (std::size_t n = 1; n <= 5; ++n) {
        // hypercube bit i-1 is coordinate x_i; the box product puts the first
        // factor in the high bits, so prepend the new factor.
        iterated = box_product(line_graph(1), iterated);
        const auto q = hypercube(n);
        std::vector<Vertex> reverse_bits(q.vertex_count());
        for (Vertex k = 0; k < q.vertex_count(); ++k) {
            Vertex r = 0;
            for (std::size_t b = 0; b < n; ++b)
                if (k >> b & 1u) r |= Vertex(1) << (n - 1 - b);
            reverse_bits[k] = r;
        }
        CHECK(mapped_edges(iterated, reverse_bits) == edge_set(q));
        for (const Edge& e : q.edges()) CHECK(std::popcount(e.u ^ e.v) == 1);
    }
}

TEST_CASE("graph map validation") {
    const auto i3 = line_graph(3);
    const auto i1 = line_graph(1);
    const auto c5 = cycle_graph(5);
    CHECK(is_graph_map(i3, c5, std::vector<Vertex>{2, 2, 2, 2}));
    CHECK_FALSE(is_graph_map(i1, c5, std::vector<Vertex>{0, 2}));
    CHECK(is_graph_map(c5, c5, std::vector<Vertex>{0, 1, 2, 3, 4}));
    CHECK(is_graph_map(GraphMap{&i3, &c5, {0, 1, 1, 2}}));
    CHECK_THROWS_AS(is_graph_map(i1, c5, std::vector<Vertex>{0, 7}), ValidationError);
    CHECK_THROWS_AS(is_graph_map(i1, c5, std::vector<Vertex>{0}), ValidationError);
}

TEST_CASE("shortest distances") {
    const auto d = all_pairs_distances(line_graph(3));
    CHECK(d(0, 3) == 3.0);
    for (std::size_t x = 0; x < 4; ++x) CHECK(d(x, x) == 0.0);

    WeightedGraph sq(4);  // 2x2 grid: 0-1, 0-2, 1-3, 2-3
    sq.add_edge(0, 1, 5.0);
    sq.add_edge(0, 2, 1.0);
    sq.add_edge(1, 3, 1.0);
    sq.add_edge(2, 3, 1.0);
    CHECK(all_pairs_distances(sq)(0, 1) == 3.0);

    WeightedGraph split(3);
    split.add_edge(0, 1);
    CHECK(all_pairs_distances(split)(0, 2) == kInfinity);
    CHECK_THROWS_AS(eccentricity(split, 0), ValidationError);
}

TEST_CASE("triangle inequality on random weighted graphs") {
    Rng rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = random_weighted_graph(rng, 3 + rng.below(6), 0.5, 7);
        const auto d = all_pairs_distances(g);
        const std::size_t n = g.vertex_count();
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v) {
                CHECK(d(u, v) == d(v, u));
                for (std::size_t w = 0; w < n; ++w) CHECK(d(u, w) <= d(u, v) + d(v, w) + 1e-12);
            }
    }
}

TEST_CASE("eccentricity") {
    CHECK(eccentricity(line_graph(2), 1) == 1.0);
    const auto c5 = cycle_graph(5);
    for (Vertex v = 0; v < 5; ++v) CHECK(eccentricity(c5, v) == 2.0);
    // I_8 has 9 vertices, so the corner of I_8 x I_8 is 16 steps from the far corner.
    CHECK(eccentricity(box_product(line_graph(8), line_graph(8)), 0) == 16.0);
    CHECK(eccentricity(grid_graph(8, 8), 0) == 14.0);
}

TEST_CASE("grid graph layout") {
    const auto g = grid_graph(3, 4);
    CHECK(g.vertex_count() == 12);
    CHECK(g.edge_count() == 17);
    CHECK(g.coords()[6] == Point2{2.0, 1.0});
    CHECK(g.weight(5, 6) == 1.0);
}

TEST_CASE("component counting and thresholds") {
    Rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = random_weighted_graph(rng, 1 + rng.below(9), 0.3, 5);
        CHECK(component_count(g) == union_find_components(g));
        const auto t = threshold_graph(g, 0.4);
        for (const Edge& e : t.edges()) CHECK(*g.weight(e.u, e.v) <= 0.4);
    }
}

TEST_CASE("edge and vertex CSV round trip") {
    const auto dir = std::filesystem::temp_directory_path() / "dch_graph_test";
    std::filesystem::create_directories(dir);
    WeightedGraph g(4);
    g.add_edge(0, 1, 0.25);
    g.add_edge(2, 3, 1.0 / 3.0);
    g.set_labels({"a", "b,c", "d", "e"});
    g.set_coords({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    write_edge_csv(dir / "e.csv", g);
    write_vertex_csv(dir / "v.csv", g);
    auto back = read_edge_csv(dir / "e.csv", 4);
    read_vertex_csv(dir / "v.csv", back);
    CHECK(back.vertex_count() == 4);
    CHECK(back.weight(2, 3) == 1.0 / 3.0);
    CHECK(back.labels() == g.labels());
    CHECK(back.coords() == g.coords());
    std::filesystem::remove_all(dir);
}

TEST_CASE("Greene sphere shape") {
    const auto g = greene_sphere();
    CHECK(g.vertex_count() == 10);
    CHECK(component_count(g) == 1);
}
