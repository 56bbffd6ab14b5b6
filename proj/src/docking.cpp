#include "avs/docking.hpp"

#include <cmath>
#include <limits>
#include <queue>

#include "avs/errors.hpp"

namespace avs {
namespace {

double angular_offset_deg(const Pose& pose, int tx, int ty) {
    const double bearing =
        std::atan2(-(static_cast<double>(ty) - pose.y), static_cast<double>(tx) - pose.x) *
        (180.0 / 3.14159265358979323846);
    double diff = std::fmod(std::abs(bearing - pose.theta), 360.0);
    if (diff > 180.0)
        diff = 360.0 - diff;
    return diff;
}

} // namespace

int destination_pose(int target, const PoseGraph& graph, const VisibilityMatrix& visibility,
                     const GridMap& map) {
    const auto [tx, ty] = map.candidate_cell(target);
    int best = -1;
    double best_dist = 0.0, best_angle = 0.0;
    for (int i = 0; i < graph.num_nodes(); ++i) {
        if (!visibility.sees(i, target))
            continue;
        const Pose& p = graph.pose(i);
        const double dist = std::hypot(static_cast<double>(tx - p.x), static_cast<double>(ty - p.y));
        const double angle = angular_offset_deg(p, tx, ty);
        constexpr double eps = 1e-9;
        const bool better =
            best < 0 || dist < best_dist - eps ||
            (dist < best_dist + eps && angle < best_angle - eps);
        if (better) {
            best = i;
            best_dist = dist;
            best_angle = angle;
        }
    }
    if (best < 0)
        throw UnobservableTarget("no pose sees candidate location " + std::to_string(target));
    return best;
}

std::vector<double> dijkstra_to(const PoseGraph& graph, int dst, const ActionWeight& weight) {
    const int n = graph.num_nodes();
    // Reverse adjacency: incoming (node, action) pairs per node.
    std::vector<std::vector<std::pair<int, Action>>> incoming(n);
    for (int i = 0; i < n; ++i)
        for (Action a : kAllActions) {
            const int j = graph.neighbor(i, a);
            if (j >= 0)
                incoming[j].emplace_back(i, a);
        }

    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, inf);
    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    dist[dst] = 0.0;
    queue.emplace(0.0, dst);
    while (!queue.empty()) {
        const auto [d, v] = queue.top();
        queue.pop();
        if (d > dist[v])
            continue;
        for (const auto& [u, a] : incoming[v]) {
            const double nd = d + weight(a);
            if (nd < dist[u]) {
                dist[u] = nd;
                queue.emplace(nd, u);
            }
        }
    }
    return dist;
}

DockingPlan shortest_path(const PoseGraph& graph, int src, int dst, const ActionWeight& weight) {
    const std::vector<double> dist = dijkstra_to(graph, dst, weight);
    if (!std::isfinite(dist[src]))
        throw Unreachable("destination pose is unreachable from the current pose");

    DockingPlan plan;
    plan.destination = dst;
    int cur = src;
    constexpr double eps = 1e-9;
    while (cur != dst) {
        bool advanced = false;
        for (Action a : kAllActions) { // ordinal order => lexicographic minimum
            const int next = graph.neighbor(cur, a);
            if (next < 0)
                continue;
            if (std::abs(weight(a) + dist[next] - dist[cur]) <= eps) {
                plan.path.emplace_back(a, next);
                cur = next;
                advanced = true;
                break;
            }
        }
        if (!advanced)
            throw Unreachable("inconsistent distance field during path reconstruction");
    }
    return plan;
}

} // namespace avs
