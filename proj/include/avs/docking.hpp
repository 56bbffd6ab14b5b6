#pragma once

#include <functional>
#include <vector>

#include "avs/grid_map.hpp"
#include "avs/pose_graph.hpp"
#include "avs/visibility.hpp"

namespace avs {

// Per-action edge cost. Defaults to 1 everywhere, reducing Dijkstra to BFS;
// the hook allows per-action energy costs later.
using ActionWeight = std::function<double(Action)>;

inline double unit_weight(Action) { return 1.0; }

struct DockingPlan {
    int destination = -1;                         // node index
    std::vector<std::pair<Action, int>> path;     // (action, resulting node)

    int length() const { return static_cast<int>(path.size()); }
};

// The pose that sees the target and is closest to its cell; ties break by
// smallest angular offset between the heading and the bearing to the target,
// then lowest node ordinal. Throws UnobservableTarget when no pose sees it.
int destination_pose(int target, const PoseGraph& graph, const VisibilityMatrix& visibility,
                     const GridMap& map);

// Cost-to-destination for every node (Dijkstra over reversed edges);
// unreachable nodes get +infinity.
std::vector<double> dijkstra_to(const PoseGraph& graph, int dst,
                                const ActionWeight& weight = unit_weight);

// Minimal-cost action sequence from src to dst; among equal-cost paths the
// lexicographically smallest action sequence. Throws Unreachable.
DockingPlan shortest_path(const PoseGraph& graph, int src, int dst,
                          const ActionWeight& weight = unit_weight);

} // namespace avs
