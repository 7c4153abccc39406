#include "dch/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <queue>
#include <utility>

#include "dch/csv.hpp"
#include "dch/error.hpp"

namespace dch {

WeightedGraph::WeightedGraph(std::size_t vertex_count)
    : vertex_count_(vertex_count),
      adjacency_(vertex_count),
      index_table_(vertex_count * vertex_count, 0) {}

void WeightedGraph::insert_edge(Vertex u, Vertex v) {
    if (u >= vertex_count_ || v >= vertex_count_)
        throw ValidationError("edge endpoint out of range");
    if (u == v) throw ValidationError("self-loops are implicit and may not be stored");
    if (u > v) std::swap(u, v);
    if (has_edge(u, v)) throw ValidationError("duplicate edge");
    edges_.push_back({u, v});
    const auto id = static_cast<std::uint32_t>(edges_.size());
    index_table_[u * vertex_count_ + v] = id;
    index_table_[v * vertex_count_ + u] = id;
    auto insert_sorted = [](std::vector<Vertex>& list, Vertex x) {
        list.insert(std::lower_bound(list.begin(), list.end(), x), x);
    };
    insert_sorted(adjacency_[u], v);
    insert_sorted(adjacency_[v], u);
}

void WeightedGraph::add_edge(Vertex u, Vertex v) {
    if (has_weights()) throw ValidationError("graph is weighted; edge needs a weight");
    insert_edge(u, v);
}

void WeightedGraph::add_edge(Vertex u, Vertex v, double weight) {
    if (!edges_.empty() && !has_weights())
        throw ValidationError("graph is unweighted; cannot add a weighted edge");
    if (!(weight >= 0.0) || std::isinf(weight))
        throw ValidationError("edge weights must be finite and nonnegative");
    insert_edge(u, v);
    weights_.push_back(weight);
}

double WeightedGraph::edge_weight(std::size_t index) const {
    return has_weights() ? weights_[index] : 1.0;
}

bool WeightedGraph::has_edge(Vertex u, Vertex v) const {
    if (u >= vertex_count_ || v >= vertex_count_) return false;
    return index_table_[u * vertex_count_ + v] != 0;
}

std::optional<std::size_t> WeightedGraph::edge_index(Vertex u, Vertex v) const {
    if (!has_edge(u, v)) return std::nullopt;
    return index_table_[u * vertex_count_ + v] - 1;
}

std::optional<double> WeightedGraph::weight(Vertex u, Vertex v) const {
    auto idx = edge_index(u, v);
    if (!idx || !has_weights()) return std::nullopt;
    return weights_[*idx];
}

void WeightedGraph::set_labels(std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != vertex_count_)
        throw ValidationError("label count does not match vertex count");
    labels_ = std::move(labels);
}

void WeightedGraph::set_coords(std::vector<Point2> coords) {
    if (!coords.empty() && coords.size() != vertex_count_)
        throw ValidationError("coordinate count does not match vertex count");
    coords_ = std::move(coords);
}

std::string WeightedGraph::vertex_name(Vertex v) const {
    if (has_labels() && !labels_[v].empty()) return labels_[v];
    return std::to_string(v);
}

WeightedGraph line_graph(std::size_t n) {
    WeightedGraph g(n + 1);
    for (std::size_t i = 0; i < n; ++i) g.add_edge(Vertex(i), Vertex(i + 1));
    return g;
}

WeightedGraph cycle_graph(std::size_t n) {
    if (n < 3) throw ValidationError("cycle graph needs at least 3 vertices");
    WeightedGraph g(n);
    for (std::size_t i = 0; i < n; ++i) g.add_edge(Vertex(i), Vertex((i + 1) % n));
    return g;
}

WeightedGraph box_product(const WeightedGraph& g, const WeightedGraph& h) {
    const std::size_t gn = g.vertex_count();
    const std::size_t hn = h.vertex_count();
    WeightedGraph out(gn * hn);
    auto id = [hn](std::size_t a, std::size_t b) { return Vertex(a * hn + b); };
    for (std::size_t a = 0; a < gn; ++a)
        for (const Edge& e : h.edges()) out.add_edge(id(a, e.u), id(a, e.v));
    for (const Edge& e : g.edges())
        for (std::size_t b = 0; b < hn; ++b) out.add_edge(id(e.u, b), id(e.v, b));
    return out;
}

WeightedGraph hypercube(std::size_t n) {
    const std::size_t count = std::size_t{1} << n;
    WeightedGraph g(count);
    for (std::size_t x = 0; x < count; ++x)
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t y = x | (std::size_t{1} << i);
            if (y != x) g.add_edge(Vertex(x), Vertex(y));
        }
    return g;
}

WeightedGraph grid_graph(std::size_t rows, std::size_t cols) {
    WeightedGraph g(rows * cols);
    std::vector<Point2> coords(rows * cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            const auto v = Vertex(r * cols + c);
            coords[v] = {double(c), double(r)};
            if (c + 1 < cols) g.add_edge(v, v + 1, 1.0);
            if (r + 1 < rows) g.add_edge(v, Vertex(v + cols), 1.0);
        }
    g.set_coords(std::move(coords));
    return g;
}

WeightedGraph complete_graph(std::size_t n) {
    WeightedGraph g(n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) g.add_edge(Vertex(u), Vertex(v));
    return g;
}

WeightedGraph greene_sphere() {
    // 0 = top, 1..4 = upper ring, 5..8 = lower ring, 9 = bottom.
    WeightedGraph g(10);
    for (Vertex b = 1; b <= 4; ++b) g.add_edge(0, b);
    const std::pair<Vertex, Vertex> middle[] = {{1, 5}, {1, 6}, {2, 5}, {2, 7},
                                                {3, 6}, {3, 8}, {4, 7}, {4, 8}};
    for (auto [b, c] : middle) g.add_edge(b, c);
    for (Vertex c = 5; c <= 8; ++c) g.add_edge(c, 9);
    return g;
}

bool is_graph_map(const WeightedGraph& source, const WeightedGraph& target,
                  std::span<const Vertex> assignment) {
    if (assignment.size() != source.vertex_count())
        throw ValidationError("assignment length does not match source vertex count");
    for (Vertex a : assignment)
        if (a >= target.vertex_count()) throw ValidationError("assignment value out of range");
    for (const Edge& e : source.edges())
        if (!target.adjacent_or_equal(assignment[e.u], assignment[e.v])) return false;
    return true;
}

bool is_graph_map(const GraphMap& f) {
    if (!f.source || !f.target) throw ValidationError("graph map missing source or target");
    return is_graph_map(*f.source, *f.target, f.assignment);
}

std::vector<double> shortest_distances(const WeightedGraph& g, Vertex source) {
    const std::size_t n = g.vertex_count();
    if (source >= n) throw ValidationError("source vertex out of range");
    for (double w : g.weights())
        if (w < 0.0) throw ValidationError("negative edge weight");
    std::vector<double> dist(n, kInfinity);
    using Item = std::pair<double, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[source] = 0.0;
    queue.push({0.0, source});
    while (!queue.empty()) {
        auto [d, u] = queue.top();
        queue.pop();
        if (d > dist[u]) continue;
        for (Vertex v : g.neighbors(u)) {
            const double nd = d + g.edge_weight(*g.edge_index(u, v));
            if (nd < dist[v]) {
                dist[v] = nd;
                queue.push({nd, v});
            }
        }
    }
    return dist;
}

DistanceMatrix all_pairs_distances(const WeightedGraph& g) {
    const std::size_t n = g.vertex_count();
    DistanceMatrix out(n);
    for (std::size_t s = 0; s < n; ++s) {
        auto row = shortest_distances(g, Vertex(s));
        for (std::size_t t = 0; t < n; ++t) out(s, t) = row[t];
    }
    // Summation order differs between the two directions; keep the matrix symmetric.
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = s + 1; t < n; ++t) out(s, t) = out(t, s) = std::min(out(s, t), out(t, s));
    return out;
}

double eccentricity(const WeightedGraph& g, Vertex x) {
    auto dist = shortest_distances(g, x);
    const double m = *std::max_element(dist.begin(), dist.end());
    if (std::isinf(m)) throw ValidationError("eccentricity requires a connected graph");
    return m;
}

std::size_t component_count(const WeightedGraph& g) {
    std::vector<Vertex> parent(g.vertex_count());
    std::iota(parent.begin(), parent.end(), Vertex{0});
    auto find = [&](Vertex x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t components = g.vertex_count();
    for (const Edge& e : g.edges()) {
        Vertex a = find(e.u), b = find(e.v);
        if (a != b) {
            parent[std::max(a, b)] = std::min(a, b);
            --components;
        }
    }
    return components;
}

WeightedGraph threshold_graph(const WeightedGraph& g, double r) {
    WeightedGraph out(g.vertex_count());
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const double w = g.edge_weight(i);
        if (w <= r) out.add_edge(g.edge(i).u, g.edge(i).v, w);
    }
    out.set_labels(g.labels());
    out.set_coords(g.coords());
    return out;
}

WeightedGraph read_edge_csv(const std::filesystem::path& path, std::size_t min_vertices) {
    const CsvTable table = read_csv(path);
    const auto cu = table.column("u");
    const auto cv = table.column("v");
    if (!cu || !cv) throw ValidationError(path.string() + ": edge CSV needs columns u,v");
    const auto cw = table.column("weight");
    struct Row {
        Vertex u, v;
        double w;
    };
    std::vector<Row> rows;
    std::size_t n = min_vertices;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        auto where = [&] { return path.string() + ":" + std::to_string(table.line_numbers[i]); };
        if (row.size() < table.header.size()) throw ValidationError(where() + ": short row");
        auto u = parse_integer(row[*cu]);
        auto v = parse_integer(row[*cv]);
        if (!u || !v || *u < 0 || *v < 0) throw ValidationError(where() + ": bad vertex id");
        double w = 1.0;
        if (cw) {
            auto parsed = parse_double(row[*cw]);
            if (!parsed) throw ValidationError(where() + ": bad weight");
            w = *parsed;
        }
        rows.push_back({Vertex(*u), Vertex(*v), w});
        n = std::max<std::size_t>(n, std::max(*u, *v) + 1);
    }
    WeightedGraph g(n);
    for (const Row& r : rows) {
        if (cw) g.add_edge(r.u, r.v, r.w);
        else g.add_edge(r.u, r.v);
    }
    return g;
}

void read_vertex_csv(const std::filesystem::path& path, WeightedGraph& g) {
    const CsvTable table = read_csv(path);
    const auto cid = table.column("id");
    if (!cid) throw ValidationError(path.string() + ": vertex CSV needs an id column");
    const auto clabel = table.column("label");
    const auto cx = table.column("x");
    const auto cy = table.column("y");
    std::vector<std::string> labels(g.vertex_count());
    std::vector<Point2> coords(g.vertex_count());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        auto id = parse_integer(row.at(*cid));
        if (!id || *id < 0 || std::size_t(*id) >= g.vertex_count())
            throw ValidationError(path.string() + ":" + std::to_string(table.line_numbers[i]) +
                                  ": vertex id out of range");
        if (clabel && *clabel < row.size()) labels[*id] = row[*clabel];
        if (cx && cy && *cx < row.size() && *cy < row.size()) {
            auto x = parse_double(row[*cx]);
            auto y = parse_double(row[*cy]);
            if (!x || !y) throw ValidationError(path.string() + ": bad coordinate");
            coords[*id] = {*x, *y};
        }
    }
    if (clabel) g.set_labels(std::move(labels));
    if (cx && cy) g.set_coords(std::move(coords));
}

void write_edge_csv(const std::filesystem::path& path, const WeightedGraph& g) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path.string());
    out << (g.has_weights() ? "u,v,weight\n" : "u,v\n");
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        out << g.edge(i).u << ',' << g.edge(i).v;
        if (g.has_weights()) out << ',' << format_double(g.edge_weight(i));
        out << '\n';
    }
}

void write_vertex_csv(const std::filesystem::path& path, const WeightedGraph& g) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path.string());
    out << "id,label,x,y\n";
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        out << v << ',' << csv_escape(g.has_labels() ? g.labels()[v] : std::to_string(v)) << ',';
        if (g.has_coords()) out << format_double(g.coords()[v].x) << ',' << format_double(g.coords()[v].y);
        else out << ',';
        out << '\n';
    }
}

}  // namespace dch
