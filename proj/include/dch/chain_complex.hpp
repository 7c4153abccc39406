#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dch/cube.hpp"
#include "dch/graph.hpp"

namespace dch {

/// GF(2) column: sorted, duplicate-free row indices of the nonzero entries.
using Column = std::vector<std::uint32_t>;

/// target += source over GF(2) (symmetric difference of sorted index sets).
void add_column(Column& target, const Column& source);
/// Sorted GF(2) column from an unsorted list; entries occurring an even number
/// of times cancel.
Column column_from_entries(std::vector<std::uint32_t> entries);

struct SparseMatrixZ2 {
    std::size_t rows = 0;
    std::vector<Column> columns;

    std::size_t cols() const { return columns.size(); }
};

SparseMatrixZ2 multiply(const SparseMatrixZ2& a, const SparseMatrixZ2& b);
bool is_zero(const SparseMatrixZ2& m);
/// Rank over GF(2) by left-to-right column reduction.
std::size_t rank(const SparseMatrixZ2& m);

/// Column j is the GF(2) boundary of cubes[d][j] in the basis cubes[d-1]:
/// the sum of all 2d faces, degenerate faces dropped.
SparseMatrixZ2 boundary_matrix(const std::vector<CubeSet>& cubes, int d);

/// Quotient chain complex of non-degenerate cubes over Z/2. `basis` covers
/// dimensions 0..max_dim+1, `boundary[d]` maps basis[d] to basis[d-1]
/// (boundary[0] is the zero map with no rows).
struct ChainComplexZ2 {
    int max_dim = 0;
    std::vector<CubeSet> basis;
    std::vector<SparseMatrixZ2> boundary;
};

ChainComplexZ2 build_chain_complex(const WeightedGraph& g, int max_dim,
                                   const CubeLimits& limits = {});

/// beta_d = dim ker(d_d) - rank(d_{d+1}) for d = 0..max_dim.
std::vector<std::size_t> betti_numbers(const ChainComplexZ2& complex);
std::vector<std::size_t> betti_numbers(const WeightedGraph& g, int max_dim,
                                       const CubeLimits& limits = {});

}  // namespace dch
