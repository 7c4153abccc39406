#include "dch/chain_complex.hpp"

#include <algorithm>

#include "dch/error.hpp"

namespace dch {

void add_column(Column& target, const Column& source) {
    Column merged;
    merged.reserve(target.size() + source.size());
    std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                  std::back_inserter(merged));
    target.swap(merged);
}

Column column_from_entries(std::vector<std::uint32_t> entries) {
    std::sort(entries.begin(), entries.end());
    Column out;
    for (auto e : entries) {
        if (!out.empty() && out.back() == e) out.pop_back();
        else out.push_back(e);
    }
    return out;
}

SparseMatrixZ2 multiply(const SparseMatrixZ2& a, const SparseMatrixZ2& b) {
    if (a.cols() != b.rows) throw InvariantError("matrix shape mismatch in multiply");
    SparseMatrixZ2 out{a.rows, {}};
    out.columns.reserve(b.cols());
    for (const Column& col : b.columns) {
        Column acc;
        for (auto k : col) add_column(acc, a.columns[k]);
        out.columns.push_back(std::move(acc));
    }
    return out;
}

bool is_zero(const SparseMatrixZ2& m) {
    return std::all_of(m.columns.begin(), m.columns.end(), [](const Column& c) { return c.empty(); });
}

std::size_t rank(const SparseMatrixZ2& m) {
    // pivot_owner[row] = reduced column whose lowest entry is `row`.
    std::vector<std::int64_t> pivot_owner(m.rows, -1);
    std::vector<Column> reduced;
    reduced.reserve(m.cols());
    std::size_t r = 0;
    for (const Column& original : m.columns) {
        Column col = original;
        while (!col.empty() && pivot_owner[col.back()] >= 0) add_column(col, reduced[pivot_owner[col.back()]]);
        if (!col.empty()) {
            pivot_owner[col.back()] = static_cast<std::int64_t>(reduced.size());
            ++r;
        }
        reduced.push_back(std::move(col));
    }
    return r;
}

SparseMatrixZ2 boundary_matrix(const std::vector<CubeSet>& cubes, int d) {
    if (d < 1 || std::size_t(d) >= cubes.size())
        throw ValidationError("boundary_matrix needs dimensions d and d-1");
    const CubeSet& top = cubes[d];
    const CubeSet& low = cubes[d - 1];
    SparseMatrixZ2 out{low.size(), {}};
    out.columns.reserve(top.size());
    std::vector<Vertex> buffer(low.width());
    std::vector<std::uint32_t> entries;
    for (std::size_t j = 0; j < top.size(); ++j) {
        entries.clear();
        for (int i = 1; i <= d; ++i)
            for (FaceSign s : {FaceSign::Minus, FaceSign::Plus}) {
                face_into(top[j], d, i, s, buffer);
                if (is_degenerate(buffer, d - 1)) continue;
                auto idx = low.find(buffer);
                if (!idx) throw InvariantError("face not found in lower basis");
                entries.push_back(static_cast<std::uint32_t>(*idx));
            }
        out.columns.push_back(column_from_entries(entries));
    }
    return out;
}

ChainComplexZ2 build_chain_complex(const WeightedGraph& g, int max_dim, const CubeLimits& limits) {
    if (max_dim < 0) throw ValidationError("max_dim must be nonnegative");
    ChainComplexZ2 cc;
    cc.max_dim = max_dim;
    cc.basis = enumerate_cubes(g, max_dim + 1, limits);
    cc.boundary.resize(max_dim + 2);
    cc.boundary[0] = SparseMatrixZ2{0, std::vector<Column>(cc.basis[0].size())};
    for (int d = 1; d <= max_dim + 1; ++d) cc.boundary[d] = boundary_matrix(cc.basis, d);
    return cc;
}

std::vector<std::size_t> betti_numbers(const ChainComplexZ2& complex) {
    std::vector<std::size_t> ranks(complex.boundary.size());
    for (std::size_t d = 0; d < complex.boundary.size(); ++d) ranks[d] = rank(complex.boundary[d]);
    std::vector<std::size_t> betti;
    for (int d = 0; d <= complex.max_dim; ++d) {
        const std::size_t kernel = complex.basis[d].size() - ranks[d];
        betti.push_back(kernel - ranks[d + 1]);
    }
    return betti;
}

std::vector<std::size_t> betti_numbers(const WeightedGraph& g, int max_dim, const CubeLimits& limits) {
    return betti_numbers(build_chain_complex(g, max_dim, limits));
}

}  // namespace dch
