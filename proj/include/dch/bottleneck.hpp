#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dch/persistence.hpp"

namespace dch {

/// Index pairs (i into P, j into Q); each index appears at most once per side.
using Matching = std::vector<std::pair<std::size_t, std::size_t>>;

/// L-infinity distance between two diagram points. Two infinite-death points
/// are compared by birth only; finite against infinite is infinite.
double point_distance(const PersistencePair& a, const PersistencePair& b);
/// Cost of leaving a point unmatched: half its persistence (infinite for
/// essential classes).
double diagonal_distance(const PersistencePair& a);

/// Max over matched distances and unmatched half-persistences; 0 when both
/// diagrams are empty. Throws ValidationError on an invalid matching.
double matching_cost(const Matching& m, const PersistenceDiagram& p, const PersistenceDiagram& q);

/// Exact bottleneck distance. Essential bars are matched among themselves by
/// sorted births; unequal essential counts give infinity.
double bottleneck(const PersistenceDiagram& p, const PersistenceDiagram& q);

/// Exhaustive minimum over all matchings; |P| + |Q| must be at most 8.
double bottleneck_bruteforce(const PersistenceDiagram& p, const PersistenceDiagram& q);

}  // namespace dch
