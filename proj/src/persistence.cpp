#include "dch/persistence.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "dch/error.hpp"

namespace dch {

std::size_t PersistenceDiagram::infinite_count() const {
    return std::count_if(pairs.begin(), pairs.end(), [](const PersistencePair& p) { return p.is_infinite(); });
}

std::vector<std::pair<double, double>> PersistenceDiagram::sorted_values() const {
    std::vector<std::pair<double, double>> out;
    out.reserve(pairs.size());
    for (const auto& p : pairs) out.emplace_back(p.birth, p.death);
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t PersistenceDiagram::alive_at(double r) const {
    return std::count_if(pairs.begin(), pairs.end(),
                         [r](const PersistencePair& p) { return p.birth <= r && r < p.death; });
}

void PersistenceDiagram::canonicalize() {
    std::sort(pairs.begin(), pairs.end(), [](const PersistencePair& a, const PersistencePair& b) {
        if (a.birth != b.birth) return a.birth < b.birth;
        if (a.death != b.death) return a.death < b.death;
        return a.cycle < b.cycle;
    });
}

double cube_filtration_value(const WeightedGraph& g, std::span<const Vertex> assignment, int dim) {
    double value = 0.0;
    const std::size_t n = assignment.size();
    for (std::size_t x = 0; x < n; ++x)
        for (int i = 0; i < dim; ++i) {
            const std::size_t y = x | (std::size_t{1} << i);
            if (y == x || assignment[x] == assignment[y]) continue;
            auto w = g.weight(assignment[x], assignment[y]);
            if (!w) throw ValidationError("cube uses an edge without a weight");
            value = std::max(value, *w);
        }
    return value;
}

FilteredComplex assign_filtration(const WeightedGraph& g, int max_dim, const CubeLimits& limits) {
    if (g.edge_count() > 0 && !g.has_weights())
        throw ValidationError("filtration requires edge weights");
    FilteredComplex fc;
    fc.complex = build_chain_complex(g, max_dim, limits);
    const int top = max_dim + 1;
    fc.order.resize(top + 1);
    fc.values.resize(top + 1);
    fc.boundary.resize(top + 1);
    fc.one_cells_by_position.resize(top + 1);
    std::vector<std::vector<std::uint32_t>> position_of(top + 1);
    for (int d = 0; d <= top; ++d) {
        const CubeSet& basis = fc.complex.basis[d];
        std::vector<double> canonical_values(basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j)
            canonical_values[j] = cube_filtration_value(g, basis[j], d);
        auto& order = fc.order[d];
        order.resize(basis.size());
        std::iota(order.begin(), order.end(), 0u);
        std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            return canonical_values[a] < canonical_values[b];
        });
        position_of[d].resize(basis.size());
        fc.values[d].resize(basis.size());
        for (std::size_t k = 0; k < order.size(); ++k) {
            position_of[d][order[k]] = static_cast<std::uint32_t>(k);
            fc.values[d][k] = canonical_values[order[k]];
        }
        if (d == 1) {
            for (std::uint32_t idx : order) {
                auto c = basis[idx];
                fc.one_cells_by_position[1].push_back({c[0], c[1]});
            }
        }
    }
    fc.boundary[0] = SparseMatrixZ2{0, std::vector<Column>(fc.order[0].size())};
    for (int d = 1; d <= top; ++d) {
        const SparseMatrixZ2& canonical = fc.complex.boundary[d];
        SparseMatrixZ2 m{canonical.rows, {}};
        m.columns.reserve(canonical.cols());
        for (std::uint32_t idx : fc.order[d]) {
            Column col;
            for (auto row : canonical.columns[idx]) col.push_back(position_of[d - 1][row]);
            std::sort(col.begin(), col.end());
            m.columns.push_back(std::move(col));
        }
        fc.boundary[d] = std::move(m);
    }
    return fc;
}

namespace {

std::vector<OrientedEdge> to_edges(const Column& col, std::span<const OrientedEdge> one_cells) {
    std::vector<OrientedEdge> out;
    if (one_cells.empty()) return out;
    out.reserve(col.size());
    for (auto idx : col) out.push_back(one_cells[idx]);
    return out;
}

}  // namespace

PersistenceDiagram persistence_from_boundaries(int dim, std::span<const double> low_values,
                                               const SparseMatrixZ2& low_boundary,
                                               std::span<const double> high_values,
                                               const SparseMatrixZ2& high_boundary,
                                               std::span<const OrientedEdge> one_cells) {
    const std::size_t n = low_values.size();
    const bool want_cycles = dim == 1 && !one_cells.empty();

    // Which dim-cells are positive (boundary reduces to zero); for dim 1 keep
    // the accumulated chain as the representative of essential classes.
    std::vector<bool> positive(n, true);
    std::vector<Column> cycle_of(want_cycles ? n : 0);
    if (dim > 0) {
        std::vector<std::int64_t> owner(low_boundary.rows, -1);
        std::vector<Column> reduced(n);
        std::vector<Column> chains(want_cycles ? n : 0);
        for (std::size_t j = 0; j < n; ++j) {
            Column col = low_boundary.columns[j];
            Column chain;
            if (want_cycles) chain.push_back(static_cast<std::uint32_t>(j));
            while (!col.empty() && owner[col.back()] >= 0) {
                const auto k = owner[col.back()];
                add_column(col, reduced[k]);
                if (want_cycles) add_column(chain, chains[k]);
            }
            if (!col.empty()) {
                owner[col.back()] = static_cast<std::int64_t>(j);
                positive[j] = false;
            } else if (want_cycles) {
                cycle_of[j] = chain;
            }
            reduced[j] = std::move(col);
            if (want_cycles) chains[j] = std::move(chain);
        }
    }

    PersistenceDiagram diagram{dim, {}};
    std::vector<bool> paired(n, false);
    std::vector<std::int64_t> owner(n, -1);
    std::vector<Column> reduced(high_boundary.cols());
    for (std::size_t j = 0; j < high_boundary.cols(); ++j) {
        Column col = high_boundary.columns[j];
        while (!col.empty() && owner[col.back()] >= 0) add_column(col, reduced[owner[col.back()]]);
        if (!col.empty()) {
            const auto low = col.back();
            owner[low] = static_cast<std::int64_t>(j);
            paired[low] = true;
            const double birth = low_values[low];
            const double death = high_values[j];
            if (birth != death) {
                diagram.pairs.push_back({birth, death, want_cycles ? to_edges(col, one_cells) : std::vector<OrientedEdge>{}});
            }
        }
        reduced[j] = std::move(col);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!positive[i] || paired[i]) continue;
        diagram.pairs.push_back(
            {low_values[i], kInfinity, want_cycles ? to_edges(cycle_of[i], one_cells) : std::vector<OrientedEdge>{}});
    }
    diagram.canonicalize();
    return diagram;
}

PersistenceDiagram reduce(const FilteredComplex& fc, int dim) {
    if (dim < 0 || dim > fc.max_dim())
        throw ValidationError("reduce: dimension outside the filtered complex");
    for (int d = dim; d <= dim + 1; ++d)
        if (!std::is_sorted(fc.values[d].begin(), fc.values[d].end()))
            throw ValidationError("reduce: cells are not sorted by filtration value");
    return persistence_from_boundaries(dim, fc.values[dim], fc.boundary[dim], fc.values[dim + 1],
                                       fc.boundary[dim + 1],
                                       dim == 1 ? std::span<const OrientedEdge>(fc.one_cells_by_position[1])
                                                : std::span<const OrientedEdge>{});
}

namespace {

SparseMatrixZ2 prefix(const SparseMatrixZ2& m, std::size_t cols) {
    SparseMatrixZ2 out{m.rows, {}};
    out.columns.assign(m.columns.begin(), m.columns.begin() + static_cast<std::ptrdiff_t>(cols));
    return out;
}

std::size_t count_at_most(const std::vector<double>& values, double r) {
    return static_cast<std::size_t>(std::upper_bound(values.begin(), values.end(), r) - values.begin());
}

}  // namespace

std::size_t betti_at(const FilteredComplex& fc, double r, int dim) {
    if (dim < 0 || dim > fc.max_dim()) throw ValidationError("betti_at: dimension outside the complex");
    const std::size_t cells = count_at_most(fc.values[dim], r);
    const std::size_t rank_low = dim == 0 ? 0 : rank(prefix(fc.boundary[dim], cells));
    const std::size_t rank_high = rank(prefix(fc.boundary[dim + 1], count_at_most(fc.values[dim + 1], r)));
    return cells - rank_low - rank_high;
}

std::vector<double> critical_values(const FilteredComplex& fc) {
    std::set<double> values;
    for (const auto& per_dim : fc.values) values.insert(per_dim.begin(), per_dim.end());
    return {values.begin(), values.end()};
}

double nontrivial_length(const PersistenceDiagram& diagram, double low, double high) {
    if (!(low < high)) throw ValidationError("nontrivial_length: empty span");
    std::vector<std::pair<double, double>> intervals;
    for (const auto& p : diagram.pairs) {
        const double b = std::max(p.birth, low);
        const double d = std::min(p.death, high);
        if (b < d) intervals.emplace_back(b, d);
    }
    std::sort(intervals.begin(), intervals.end());
    double covered = 0.0;
    double cursor = low;
    for (auto [b, d] : intervals) {
        if (d <= cursor) continue;
        covered += d - std::max(b, cursor);
        cursor = d;
    }
    return covered / (high - low) * 100.0;
}

const PersistencePair& longest_bar(const PersistenceDiagram& diagram, double span_end) {
    if (diagram.empty()) throw ValidationError("longest_bar: empty diagram");
    const PersistencePair* best = &diagram.pairs.front();
    for (const auto& p : diagram.pairs) {
        const double lp = p.length(span_end);
        const double lb = best->length(span_end);
        if (lp > lb || (lp == lb && (p.birth < best->birth || (p.birth == best->birth && p.cycle < best->cycle))))
            best = &p;
    }
    return *best;
}

std::vector<std::vector<Vertex>> cycle_vertices(std::span<const OrientedEdge> representative) {
    // Undirected projection mod 2.
    std::map<std::pair<Vertex, Vertex>, int> parity;
    for (const auto& e : representative) {
        if (e.from == e.to) continue;
        auto key = std::minmax(e.from, e.to);
        parity[{key.first, key.second}] ^= 1;
    }
    std::map<Vertex, std::set<Vertex>> adjacency;
    for (const auto& [edge, bit] : parity) {
        if (!bit) continue;
        adjacency[edge.first].insert(edge.second);
        adjacency[edge.second].insert(edge.first);
    }
    for (const auto& [v, nb] : adjacency)
        if (nb.size() % 2 != 0)
            throw ValidationError("cycle_vertices: input is not a cycle (odd degree at vertex " +
                                  std::to_string(v) + ")");

    auto remove_edge = [&](Vertex a, Vertex b) {
        adjacency[a].erase(b);
        adjacency[b].erase(a);
    };

    std::vector<std::vector<Vertex>> cycles;
    while (true) {
        auto start_it = std::find_if(adjacency.begin(), adjacency.end(),
                                     [](const auto& kv) { return !kv.second.empty(); });
        if (start_it == adjacency.end()) break;
        // Walk greedily along the smallest unused neighbour; whenever the walk
        // revisits a vertex, split off the simple cycle it closed.
        std::vector<Vertex> path{start_it->first};
        std::map<Vertex, std::size_t> position{{start_it->first, 0}};
        while (!path.empty()) {
            const Vertex here = path.back();
            auto& nb = adjacency[here];
            if (nb.empty()) {
                // Only happens at the start vertex once all its cycles are out.
                position.erase(here);
                path.pop_back();
                continue;
            }
            const Vertex next = *nb.begin();
            remove_edge(here, next);
            auto seen = position.find(next);
            if (seen == position.end()) {
                position[next] = path.size();
                path.push_back(next);
                continue;
            }
            std::vector<Vertex> cycle(path.begin() + static_cast<std::ptrdiff_t>(seen->second), path.end());
            for (std::size_t k = seen->second + 1; k < path.size(); ++k) position.erase(path[k]);
            path.resize(seen->second + 1);
            cycles.push_back(std::move(cycle));
        }
    }

    // Rotate each cycle to start at its smallest vertex, heading towards the
    // smaller of its two neighbours.
    for (auto& c : cycles) {
        auto min_it = std::min_element(c.begin(), c.end());
        std::rotate(c.begin(), min_it, c.end());
        if (c.size() > 2 && c.back() < c[1]) std::reverse(c.begin() + 1, c.end());
    }
    std::sort(cycles.begin(), cycles.end());
    return cycles;
}

}  // namespace dch
