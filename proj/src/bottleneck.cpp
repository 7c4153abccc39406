#include "dch/bottleneck.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "dch/error.hpp"

namespace dch {

double point_distance(const PersistencePair& a, const PersistencePair& b) {
    if (a.is_infinite() && b.is_infinite()) return std::abs(a.birth - b.birth);
    if (a.is_infinite() || b.is_infinite()) return kInfinity;
    return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double diagonal_distance(const PersistencePair& a) {
    if (a.is_infinite()) return kInfinity;
    return std::abs(a.death - a.birth) / 2.0;
}

double matching_cost(const Matching& m, const PersistenceDiagram& p, const PersistenceDiagram& q) {
    std::vector<bool> used_p(p.size(), false), used_q(q.size(), false);
    double cost = 0.0;
    for (auto [i, j] : m) {
        if (i >= p.size() || j >= q.size()) throw ValidationError("matching index out of range");
        if (used_p[i] || used_q[j]) throw ValidationError("matching is not injective");
        used_p[i] = used_q[j] = true;
        cost = std::max(cost, point_distance(p.pairs[i], q.pairs[j]));
    }
    for (std::size_t i = 0; i < p.size(); ++i)
        if (!used_p[i]) cost = std::max(cost, diagonal_distance(p.pairs[i]));
    for (std::size_t j = 0; j < q.size(); ++j)
        if (!used_q[j]) cost = std::max(cost, diagonal_distance(q.pairs[j]));
    return cost;
}

namespace {

// Perfect matching test on the augmented bipartite graph: left = P points
// then Q's diagonal copies, right = Q points then P's diagonal copies.
class Feasibility {
public:
    Feasibility(const std::vector<PersistencePair>& p, const std::vector<PersistencePair>& q) : p_(p), q_(q) {}

    bool operator()(double delta) {
        const std::size_t n = p_.size(), m = q_.size();
        const std::size_t size = n + m;
        adjacency_.assign(size, {});
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < m; ++j)
                if (point_distance(p_[i], q_[j]) <= delta) adjacency_[i].push_back(j);
            if (diagonal_distance(p_[i]) <= delta) adjacency_[i].push_back(m + i);
        }
        for (std::size_t j = 0; j < m; ++j) {
            if (diagonal_distance(q_[j]) <= delta) adjacency_[n + j].push_back(j);
            for (std::size_t i = 0; i < n; ++i) adjacency_[n + j].push_back(m + i);
        }
        match_right_.assign(size, -1);
        for (std::size_t left = 0; left < size; ++left) {
            visited_.assign(size, false);
            if (!augment(left)) return false;
        }
        return true;
    }

private:
    bool augment(std::size_t left) {
        for (std::size_t right : adjacency_[left]) {
            if (visited_[right]) continue;
            visited_[right] = true;
            if (match_right_[right] < 0 || augment(static_cast<std::size_t>(match_right_[right]))) {
                match_right_[right] = static_cast<std::int64_t>(left);
                return true;
            }
        }
        return false;
    }

    const std::vector<PersistencePair>& p_;
    const std::vector<PersistencePair>& q_;
    std::vector<std::vector<std::size_t>> adjacency_;
    std::vector<std::int64_t> match_right_;
    std::vector<bool> visited_;
};

}  // namespace

double bottleneck(const PersistenceDiagram& p, const PersistenceDiagram& q) {
    std::vector<PersistencePair> pf, qf;
    std::vector<double> pb, qb;
    for (const auto& a : p.pairs) {
        if (a.is_infinite()) pb.push_back(a.birth);
        else pf.push_back({a.birth, a.death, {}});
    }
    for (const auto& b : q.pairs) {
        if (b.is_infinite()) qb.push_back(b.birth);
        else qf.push_back({b.birth, b.death, {}});
    }
    if (pb.size() != qb.size()) return kInfinity;
    std::sort(pb.begin(), pb.end());
    std::sort(qb.begin(), qb.end());
    double essential = 0.0;
    for (std::size_t i = 0; i < pb.size(); ++i) essential = std::max(essential, std::abs(pb[i] - qb[i]));

    std::vector<double> candidates{0.0};
    for (const auto& a : pf) {
        candidates.push_back(diagonal_distance(a));
        for (const auto& b : qf) candidates.push_back(point_distance(a, b));
    }
    for (const auto& b : qf) candidates.push_back(diagonal_distance(b));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    Feasibility feasible(pf, qf);
    std::size_t lo = 0, hi = candidates.size() - 1;  // the largest candidate is always feasible
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (feasible(candidates[mid])) hi = mid;
        else lo = mid + 1;
    }
    return std::max(essential, candidates[lo]);
}

double bottleneck_bruteforce(const PersistenceDiagram& p, const PersistenceDiagram& q) {
    if (p.size() + q.size() > 8) throw ValidationError("bottleneck_bruteforce: at most 8 points in total");
    double best = kInfinity;
    bool any = false;
    Matching current;
    std::vector<bool> used(q.size(), false);
    std::function<void(std::size_t)> recurse = [&](std::size_t i) {
        if (i == p.size()) {
            const double c = matching_cost(current, p, q);
            if (!any || c < best) best = c;
            any = true;
            return;
        }
        recurse(i + 1);  // p[i] unmatched
        for (std::size_t j = 0; j < q.size(); ++j) {
            if (used[j]) continue;
            used[j] = true;
            current.emplace_back(i, j);
            recurse(i + 1);
            current.pop_back();
            used[j] = false;
        }
    };
    recurse(0);
    return best;
}

}  // namespace dch
