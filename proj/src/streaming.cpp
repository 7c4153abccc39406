#include "dch/streaming.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>

#include "dch/error.hpp"

namespace dch {

std::string_view to_string(Method m) { return m == Method::Cubical ? "cubical" : "flag"; }

Method parse_method(std::string_view name) {
    if (name == "cubical") return Method::Cubical;
    if (name == "flag") return Method::Flag;
    throw ValidationError("unknown persistence method '" + std::string(name) + "'");
}

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), Vertex{0}); }
    Vertex find(Vertex x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    bool unite(Vertex a, Vertex b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[std::max(a, b)] = std::min(a, b);
        return true;
    }

private:
    std::vector<Vertex> parent_;
};

// Edge-stage driver shared by the cubical and flag variants.
class Engine {
public:
    Engine(const WeightedGraph& g, Method method, int max_dim, std::vector<PersistenceDiagram>& diagrams,
           std::vector<MergeEvent>& merges, StreamingStats& stats)
        : g_(g), method_(method), max_dim_(max_dim), n_(g.vertex_count()), diagrams_(diagrams),
          merges_(merges), stats_(stats), uf_(g.vertex_count()) {}

    void run() {
        sort_edges();
        diagrams_.assign(max_dim_ + 1, PersistenceDiagram{});
        for (int d = 0; d <= max_dim_; ++d) diagrams_[d].dimension = d;
        closed_.resize(n_);
        for (Vertex v = 0; v < n_; ++v) closed_[v].push_back(v);
        const std::size_t cells_per_edge = method_ == Method::Cubical ? 2 : 1;
        owner_.assign(order_.size() * cells_per_edge, -1);
        positive_.assign(order_.size() * cells_per_edge, false);
        std::size_t components = n_;

        std::size_t begin = 0;
        while (begin < order_.size()) {
            const double tau = g_.edge_weight(order_[begin]);
            std::size_t end = begin;
            while (end < order_.size() && g_.edge_weight(order_[end]) == tau) ++end;
            ++stats_.stages;
            for (std::size_t k = begin; k < end; ++k) {
                const Edge& e = g_.edge(order_[k]);
                closed_[e.u].push_back(e.v);
                closed_[e.v].push_back(e.u);
                const bool merged = uf_.unite(e.u, e.v);
                if (merged) {
                    --components;
                    merges_.push_back({e.u, e.v, tau});
                    if (tau > 0.0) diagrams_[0].pairs.push_back({0.0, tau, {}});
                }
                if (method_ == Method::Cubical) {
                    positive_[2 * k] = !merged;
                    positive_[2 * k + 1] = true;
                    cells_ += 2;
                } else {
                    positive_[k] = !merged;
                    cells_ += 1;
                }
            }
            stage_begin_ = begin;
            stage_end_ = end;
            tau_ = tau;
            rank1_ = n_ - components;
            if (max_dim_ >= 1) {
                if (method_ == Method::Cubical) cubical_stage();
                else flag_stage();
            }
            begin = end;
        }
        for (std::size_t c = 0; c < components; ++c) diagrams_[0].pairs.push_back({0.0, kInfinity, {}});
        if (max_dim_ >= 1) essential_cycles();
        for (auto& d : diagrams_) d.canonicalize();
        stats_.pivots = pivots_;
    }

private:
    void sort_edges() {
        if (g_.edge_count() > 0 && !g_.has_weights())
            throw ValidationError("persistence requires edge weights");
        order_.resize(g_.edge_count());
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
            const double wa = g_.edge_weight(a), wb = g_.edge_weight(b);
            if (wa != wb) return wa < wb;
            return g_.edge(a) < g_.edge(b);
        });
        position_.assign(n_ * n_, -1);
        for (std::size_t k = 0; k < order_.size(); ++k) {
            const Edge& e = g_.edge(order_[k]);
            position_[e.u * n_ + e.v] = position_[e.v * n_ + e.u] = static_cast<std::int64_t>(k);
        }
    }

    std::int64_t pos(Vertex a, Vertex b) const { return position_[a * n_ + b]; }
    // Reflexive adjacency in the current stage graph.
    bool adjacent(Vertex a, Vertex b) const {
        if (a == b) return true;
        const auto p = pos(a, b);
        return p >= 0 && static_cast<std::size_t>(p) < stage_end_;
    }
    bool in_stage(std::int64_t p) const {
        return p >= 0 && static_cast<std::size_t>(p) >= stage_begin_ && static_cast<std::size_t>(p) < stage_end_;
    }

    std::uint32_t cell_of(Vertex from, Vertex to) const {
        const auto p = static_cast<std::uint32_t>(pos(from, to));
        if (method_ == Method::Flag) return p;
        return 2 * p + (from < to ? 0 : 1);
    }
    OrientedEdge edge_of_cell(std::uint32_t cell) const {
        if (method_ == Method::Flag) {
            const Edge& e = g_.edge(order_[cell]);
            return {e.u, e.v};
        }
        const Edge& e = g_.edge(order_[cell / 2]);
        return cell % 2 == 0 ? OrientedEdge{e.u, e.v} : OrientedEdge{e.v, e.u};
    }
    double value_of_cell(std::uint32_t cell) const {
        return g_.edge_weight(order_[method_ == Method::Flag ? cell : cell / 2]);
    }

    std::size_t beta1() const { return cells_ - rank1_ - pivots_; }

    // Reduces one 2-cell boundary; records a pair when it creates a pivot.
    void add_two_cell(std::array<std::uint32_t, 4>& entries, std::size_t count) {
        ++stats_.two_cells_generated;
        std::sort(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(count));
        work_.clear();
        for (std::size_t i = 0; i < count; ++i) {
            if (!work_.empty() && work_.back() == entries[i]) work_.pop_back();
            else work_.push_back(entries[i]);
        }
        while (!work_.empty() && owner_[work_.back()] >= 0) add_column(work_, columns_[owner_[work_.back()]]);
        if (work_.empty()) return;
        const std::uint32_t low = work_.back();
        owner_[low] = static_cast<std::int32_t>(columns_.size());
        ++pivots_;
        const double birth = value_of_cell(low);
        if (birth < tau_) {
            PersistencePair pair{birth, tau_, {}};
            pair.cycle.reserve(work_.size());
            for (auto c : work_) pair.cycle.push_back(edge_of_cell(c));
            diagrams_[1].pairs.push_back(std::move(pair));
        }
        columns_.push_back(work_);
    }

    // Emits one candidate 2-cube (a,b,c,d) = images of corners 00,10,01,11
    // if it is non-degenerate, belongs to the current pass, and (k, slot) is
    // its canonical generator. Returns true when the stage is finished.
    bool try_cube(Vertex a, Vertex b, Vertex c, Vertex d, std::size_t k, int slot, bool small_pass) {
        if ((a == c && b == d) || (a == b && c == d)) return false;
        const std::array<std::pair<Vertex, Vertex>, 4> sides{{{a, b}, {c, d}, {a, c}, {b, d}}};
        std::int64_t best = -1;
        int best_slot = -1;
        for (int s = 0; s < 4; ++s) {
            auto [x, y] = sides[s];
            if (x == y) continue;
            const auto p = pos(x, y);
            if (in_stage(p) && (best < 0 || p < best)) {
                best = p;
                best_slot = s;
            }
        }
        if (best != static_cast<std::int64_t>(k) || best_slot != slot) return false;
        std::array<Vertex, 4> corners{a, b, c, d};
        std::sort(corners.begin(), corners.end());
        const bool small = std::unique(corners.begin(), corners.end()) - corners.begin() <= 3;
        if (small != small_pass) return false;
        std::array<std::uint32_t, 4> entries{};
        std::size_t count = 0;
        for (auto [x, y] : sides)
            if (x != y) entries[count++] = cell_of(x, y);
        add_two_cell(entries, count);
        return beta1() == 0;
    }

    void cubical_stage() {
        if (beta1() == 0) return;
        for (bool small_pass : {true, false}) {
            for (std::size_t k = stage_begin_; k < stage_end_; ++k) {
                const Edge& e = g_.edge(order_[k]);
                for (auto [x, y] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
                    // slot 0: (a,b) = (x,y)
                    for (Vertex c : closed_[x])
                        for (Vertex d : closed_[c])
                            if (adjacent(y, d) && try_cube(x, y, c, d, k, 0, small_pass)) return;
                    // slot 1: (c,d) = (x,y)
                    for (Vertex a : closed_[x])
                        for (Vertex b : closed_[a])
                            if (adjacent(b, y) && try_cube(a, b, x, y, k, 1, small_pass)) return;
                    // slot 2: (a,c) = (x,y)
                    for (Vertex b : closed_[x])
                        for (Vertex d : closed_[b])
                            if (adjacent(y, d) && try_cube(x, b, y, d, k, 2, small_pass)) return;
                    // slot 3: (b,d) = (x,y)
                    for (Vertex a : closed_[x])
                        for (Vertex c : closed_[a])
                            if (adjacent(c, y) && try_cube(a, x, c, y, k, 3, small_pass)) return;
                }
            }
        }
    }

    void flag_stage() {
        if (beta1() == 0) return;
        for (std::size_t k = stage_begin_; k < stage_end_; ++k) {
            const Edge& e = g_.edge(order_[k]);
            for (Vertex w : closed_[e.u]) {
                if (w == e.u || w == e.v || !adjacent(e.v, w)) continue;
                const auto p1 = pos(e.u, w);
                const auto p2 = pos(e.v, w);
                if ((in_stage(p1) && p1 < static_cast<std::int64_t>(k)) ||
                    (in_stage(p2) && p2 < static_cast<std::int64_t>(k)))
                    continue;
                std::array<std::uint32_t, 4> entries{cell_of(e.u, e.v), cell_of(e.u, w), cell_of(e.v, w), 0};
                add_two_cell(entries, 3);
                if (beta1() == 0) return;
            }
        }
    }

    // Unpaired positive 1-cells: representative = the cell plus the spanning
    // forest path joining its endpoints (all forest edges are older).
    void essential_cycles() {
        std::vector<std::vector<std::pair<Vertex, std::size_t>>> forest(n_);
        UnionFind uf(n_);
        for (std::size_t k = 0; k < order_.size(); ++k) {
            const Edge& e = g_.edge(order_[k]);
            if (uf.unite(e.u, e.v)) {
                forest[e.u].push_back({e.v, k});
                forest[e.v].push_back({e.u, k});
            }
        }
        for (std::uint32_t cell = 0; cell < positive_.size(); ++cell) {
            if (!positive_[cell] || owner_[cell] >= 0) continue;
            const OrientedEdge sigma = edge_of_cell(cell);
            PersistencePair pair{value_of_cell(cell), kInfinity, {sigma}};
            // Path sigma.to -> sigma.from in the forest.
            std::vector<std::int64_t> parent(n_, -1);
            std::vector<Vertex> stack{sigma.to};
            parent[sigma.to] = sigma.to;
            while (!stack.empty()) {
                const Vertex x = stack.back();
                stack.pop_back();
                for (auto [y, k] : forest[x])
                    if (parent[y] < 0) {
                        parent[y] = x;
                        stack.push_back(y);
                    }
            }
            std::vector<Vertex> path{sigma.from};
            while (path.back() != sigma.to) path.push_back(static_cast<Vertex>(parent[path.back()]));
            // path runs from -> ... -> to; traverse it backwards.
            for (std::size_t i = path.size() - 1; i > 0; --i) {
                const Vertex x = path[i], y = path[i - 1];
                if (method_ == Method::Flag) pair.cycle.push_back({std::min(x, y), std::max(x, y)});
                else pair.cycle.push_back({x, y});
            }
            diagrams_[1].pairs.push_back(std::move(pair));
        }
    }

    const WeightedGraph& g_;
    Method method_;
    int max_dim_;
    std::size_t n_;
    std::vector<PersistenceDiagram>& diagrams_;
    std::vector<MergeEvent>& merges_;
    StreamingStats& stats_;
    UnionFind uf_;

    std::vector<std::size_t> order_;
    std::vector<std::int64_t> position_;
    std::vector<std::vector<Vertex>> closed_;
    std::vector<std::int32_t> owner_;
    std::vector<bool> positive_;
    std::vector<Column> columns_;
    Column work_;
    std::size_t stage_begin_ = 0;
    std::size_t stage_end_ = 0;
    double tau_ = 0.0;
    std::size_t cells_ = 0;
    std::size_t rank1_ = 0;
    std::size_t pivots_ = 0;
};

}  // namespace

GraphPersistence::GraphPersistence(const WeightedGraph& g, Method method, int max_dim) {
    if (max_dim < 0 || max_dim > 1) throw ValidationError("graph persistence supports dimensions 0 and 1");
    Engine(g, method, max_dim, diagrams_, merges_, stats_).run();
}

std::vector<PersistenceDiagram> cubical_persistence(const WeightedGraph& g, int max_dim) {
    return GraphPersistence(g, Method::Cubical, max_dim).diagrams();
}

}  // namespace dch
