#include "avs/pose_graph.hpp"

#include <cmath>

#include "avs/errors.hpp"

namespace avs {

const char* action_name(Action a) {
    switch (a) {
    case MoveForward: return "move_forward";
    case MoveBackward: return "move_backward";
    case RotateClockwise: return "rotate_clockwise";
    case RotateCounterClockwise: return "rotate_counter_clockwise";
    }
    return "?";
}

std::pair<int, int> heading_delta(int theta) {
    const double rad = theta * (3.14159265358979323846 / 180.0);
    // lround is exact for the multiples of 45 degrees used in practice;
    // grid y grows southward, so +sin points to lower row indices.
    const int dx = static_cast<int>(std::lround(std::cos(rad)));
    const int dy = -static_cast<int>(std::lround(std::sin(rad)));
    return {dx, dy};
}

PoseGraph::PoseGraph(const GridMap& map, int delta_theta)
    : width_(map.width()), height_(map.height()), delta_theta_(delta_theta) {
    if (delta_theta_ <= 0 || 360 % delta_theta_ != 0)
        throw InvalidRotationStep("rotation step must divide 360, got " +
                                  std::to_string(delta_theta_));

    const int headings = num_headings();
    cell_base_.assign(static_cast<std::size_t>(width_) * height_, -1);
    for (int y = 0; y < height_; ++y) {
        for (int x = 0; x < width_; ++x) {
            if (map.at(x, y) != Cell::Empty)
                continue;
            cell_base_[static_cast<std::size_t>(y) * width_ + x] =
                static_cast<int>(poses_.size());
            for (int h = 0; h < headings; ++h)
                poses_.push_back(Pose{x, y, h * delta_theta_});
        }
    }

    edges_.assign(poses_.size() * kNumActions, -1);
    for (int i = 0; i < num_nodes(); ++i) {
        const Pose& p = poses_[i];
        const int h = p.theta / delta_theta_;
        const int base = cell_base_[static_cast<std::size_t>(p.y) * width_ + p.x];

        const int h_ccw = (h + 1) % headings;
        const int h_cw = (h + headings - 1) % headings;
        edges_[static_cast<std::size_t>(i) * kNumActions + RotateCounterClockwise] = base + h_ccw;
        edges_[static_cast<std::size_t>(i) * kNumActions + RotateClockwise] = base + h_cw;

        const auto [dx, dy] = heading_delta(p.theta);
        for (Action a : {MoveForward, MoveBackward}) {
            const int sign = (a == MoveForward) ? 1 : -1;
            const int nx = p.x + sign * dx;
            const int ny = p.y + sign * dy;
            if (!map.in_bounds(nx, ny) || map.at(nx, ny) != Cell::Empty)
                continue;
            const int nbase = cell_base_[static_cast<std::size_t>(ny) * width_ + nx];
            edges_[static_cast<std::size_t>(i) * kNumActions + a] = nbase + h;
        }
    }
}

int PoseGraph::node_of(const Pose& p) const {
    if (p.x < 0 || p.x >= width_ || p.y < 0 || p.y >= height_)
        return -1;
    const int base = cell_base_[static_cast<std::size_t>(p.y) * width_ + p.x];
    if (base < 0)
        return -1;
    if (p.theta < 0 || p.theta >= 360 || p.theta % delta_theta_ != 0)
        return -1;
    return base + p.theta / delta_theta_;
}

PoseGraph build_pose_graph(const GridMap& map, int delta_theta) {
    return PoseGraph(map, delta_theta);
}

std::optional<Pose> apply_action(const PoseGraph& graph, const Pose& pose, Action a) {
    const int node = graph.node_of(pose);
    if (node < 0)
        return std::nullopt;
    const int next = graph.neighbor(node, a);
    if (next < 0)
        return std::nullopt;
    return graph.pose(next);
}

} // namespace avs
