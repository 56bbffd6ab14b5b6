#pragma once

#include <array>
#include <optional>
#include <vector>

#include "avs/grid_map.hpp"

namespace avs {

// Action ordinals are load-bearing: ties in the planner and in path
// reconstruction break toward the lowest ordinal.
enum Action : int {
    MoveForward = 0,
    MoveBackward = 1,
    RotateClockwise = 2,
    RotateCounterClockwise = 3,
};
inline constexpr int kNumActions = 4;
inline constexpr std::array<Action, kNumActions> kAllActions = {
    MoveForward, MoveBackward, RotateClockwise, RotateCounterClockwise};

const char* action_name(Action a);

// Discrete agent pose: cell position plus heading in degrees. theta = 0
// points east (+x), theta = 90 north (-y, i.e. toward row 0).
struct Pose {
    int x = 0;
    int y = 0;
    int theta = 0;

    bool operator==(const Pose&) const = default;
};

// Unit cell displacement for a heading. Exact on the 45-degree lattice.
std::pair<int, int> heading_delta(int theta);

// Nodes are the discrete poses on empty cells; edges connect poses reachable
// with a single action. Rotation edges always exist; translation edges exist
// iff the destination cell is empty.
class PoseGraph {
public:
    PoseGraph(const GridMap& map, int delta_theta);

    int num_nodes() const { return static_cast<int>(poses_.size()); }
    int delta_theta() const { return delta_theta_; }
    int num_headings() const { return 360 / delta_theta_; }

    const Pose& pose(int node) const { return poses_[node]; }
    const std::vector<Pose>& poses() const { return poses_; }

    // Node index for a pose, or -1 if the pose is not on the graph.
    int node_of(const Pose& p) const;

    // Edge target for (node, action), or -1 when the move is blocked.
    int neighbor(int node, Action a) const {
        return edges_[static_cast<std::size_t>(node) * kNumActions + a];
    }

private:
    int width_ = 0;
    int height_ = 0;
    int delta_theta_ = 90;
    std::vector<Pose> poses_;
    std::vector<int> edges_;        // num_nodes x kNumActions, -1 = no edge
    std::vector<int> cell_base_;    // per cell: first node index, -1 if not empty
};

// Throws InvalidRotationStep unless delta_theta divides 360.
PoseGraph build_pose_graph(const GridMap& map, int delta_theta);

// Edge target pose, or nullopt when the translation is blocked. Rotations
// never block.
std::optional<Pose> apply_action(const PoseGraph& graph, const Pose& pose, Action a);

} // namespace avs
