#include "dch/cube.hpp"

#include <algorithm>
#include <string>

#include "dch/error.hpp"

namespace dch {

namespace {

std::size_t corner_count(int dim) { return std::size_t{1} << dim; }

// Inserts bit `e` at position `bit` of the (dim-1)-bit index x.
std::size_t insert_bit(std::size_t x, int bit, std::size_t e) {
    const std::size_t low = x & ((std::size_t{1} << bit) - 1);
    const std::size_t high = x >> bit;
    return low | (e << bit) | (high << (bit + 1));
}

}  // namespace

void face_into(std::span<const Vertex> assignment, int dim, int i, FaceSign sign,
               std::span<Vertex> out) {
    if (dim < 1 || i < 1 || i > dim) throw ValidationError("face index out of range");
    const std::size_t e = sign == FaceSign::Plus ? 1 : 0;
    const std::size_t n = corner_count(dim - 1);
    for (std::size_t x = 0; x < n; ++x) out[x] = assignment[insert_bit(x, i - 1, e)];
}

SingularCube face(const SingularCube& cube, int i, FaceSign sign) {
    SingularCube out{cube.dimension - 1, std::vector<Vertex>(corner_count(std::max(cube.dimension - 1, 0)))};
    face_into(cube.assignment, cube.dimension, i, sign, out.assignment);
    return out;
}

bool is_degenerate(std::span<const Vertex> assignment, int dim) {
    const std::size_t n = corner_count(dim);
    for (int i = 0; i < dim; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        bool equal = true;
        for (std::size_t x = 0; x < n && equal; ++x)
            if (!(x & bit) && assignment[x] != assignment[x | bit]) equal = false;
        if (equal) return true;
    }
    return false;
}

bool is_degenerate(const SingularCube& cube) {
    return is_degenerate(cube.assignment, cube.dimension);
}

bool is_singular_cube(const WeightedGraph& g, const SingularCube& cube) {
    if (cube.assignment.size() != corner_count(cube.dimension)) return false;
    for (Vertex v : cube.assignment)
        if (v >= g.vertex_count()) return false;
    const std::size_t n = cube.assignment.size();
    for (std::size_t x = 0; x < n; ++x)
        for (int i = 0; i < cube.dimension; ++i) {
            const std::size_t y = x | (std::size_t{1} << i);
            if (y != x && !g.adjacent_or_equal(cube.assignment[x], cube.assignment[y])) return false;
        }
    return true;
}

CubeSet::CubeSet(int dimension) : dimension_(dimension), width_(corner_count(dimension)) {}

SingularCube CubeSet::cube(std::size_t i) const {
    auto a = (*this)[i];
    return {dimension_, std::vector<Vertex>(a.begin(), a.end())};
}

void CubeSet::push_back(std::span<const Vertex> assignment) {
    if (assignment.size() != width_) throw InvariantError("cube width mismatch");
    data_.insert(data_.end(), assignment.begin(), assignment.end());
}

std::optional<std::size_t> CubeSet::find(std::span<const Vertex> assignment) const {
    std::size_t lo = 0;
    std::size_t hi = size();
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        auto c = (*this)[mid];
        if (std::lexicographical_compare(c.begin(), c.end(), assignment.begin(), assignment.end()))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < size() && std::ranges::equal((*this)[lo], assignment)) return lo;
    return std::nullopt;
}

namespace {

// Depth-first enumeration of all graph maps from the discrete cube into g,
// in lexicographic order of assignments. Corner k is constrained by the
// corners obtained by clearing one set bit of k, all of which precede it.
class MapEnumerator {
public:
    MapEnumerator(const WeightedGraph& g, int dim, const CubeLimits& limits, CubeSet& out)
        : g_(g), dim_(dim), limits_(limits), out_(out), assignment_(corner_count(dim)) {
        closed_.resize(g.vertex_count());
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            auto nb = g.neighbors(v);
            closed_[v].assign(nb.begin(), nb.end());
            closed_[v].insert(std::lower_bound(closed_[v].begin(), closed_[v].end(), v), v);
        }
    }

    void run() { extend(0); }

private:
    void extend(std::size_t k) {
        if (k == assignment_.size()) {
            if (++visited_ > limits_.max_maps_visited)
                throw ResourceLimitError("graph-map enumeration exceeded " +
                                         std::to_string(limits_.max_maps_visited) +
                                         " maps in dimension " + std::to_string(dim_));
            if (!is_degenerate(assignment_, dim_)) {
                if (out_.size() >= limits_.max_cubes_per_dim)
                    throw ResourceLimitError("more than " + std::to_string(limits_.max_cubes_per_dim) +
                                             " non-degenerate cubes in dimension " +
                                             std::to_string(dim_));
                out_.push_back(assignment_);
            }
            return;
        }
        if (k == 0) {
            for (Vertex v = 0; v < g_.vertex_count(); ++v) {
                assignment_[0] = v;
                extend(1);
            }
            return;
        }
        const std::size_t lowest = k & (~k + 1);
        const Vertex anchor = assignment_[k ^ lowest];
        for (Vertex v : closed_[anchor]) {
            bool ok = true;
            for (std::size_t rest = k ^ lowest; rest && ok; rest &= rest - 1) {
                const std::size_t bit = rest & (~rest + 1);
                if (!g_.adjacent_or_equal(assignment_[k ^ bit], v)) ok = false;
            }
            if (!ok) continue;
            assignment_[k] = v;
            extend(k + 1);
        }
    }

    const WeightedGraph& g_;
    int dim_;
    const CubeLimits& limits_;
    CubeSet& out_;
    std::vector<Vertex> assignment_;
    std::vector<std::vector<Vertex>> closed_;
    std::size_t visited_ = 0;
};

}  // namespace

std::vector<CubeSet> enumerate_cubes(const WeightedGraph& g, int max_dim, const CubeLimits& limits) {
    if (max_dim < 0) throw ValidationError("max_dim must be nonnegative");
    if (max_dim > limits.max_dimension)
        throw ResourceLimitError("cube dimension " + std::to_string(max_dim) + " exceeds limit " +
                                 std::to_string(limits.max_dimension));
    std::vector<CubeSet> cubes;
    for (int d = 0; d <= max_dim; ++d) {
        CubeSet set(d);
        if (d == 0) {
            for (Vertex v = 0; v < g.vertex_count(); ++v) set.push_back(std::span<const Vertex>(&v, 1));
        } else if (g.edge_count() > 0) {
            MapEnumerator(g, d, limits, set).run();
        }
        cubes.push_back(std::move(set));
    }
    return cubes;
}

}  // namespace dch
