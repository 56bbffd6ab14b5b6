#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "avs/grid_map.hpp"
#include "avs/pose_graph.hpp"

namespace avs {

struct FovParams {
    double half_angle_deg = 45.0; // (0, 180]
    double max_range = 5.0;       // cells, >= 1
};

// All cells a segment between two cell centers touches, start cell excluded.
// Conservative: when the segment crosses a cell corner exactly, both cells
// sharing the corner are reported.
std::vector<std::pair<int, int>> supercover_line(int x0, int y0, int x1, int y1);

// Candidate indices visible from a pose: within the angular cone and range,
// with an unoccluded center-to-center ray. Candidate cells never occlude.
std::vector<int> visible_locations(const GridMap& map, const Pose& pose, const FovParams& fov);

// Boolean n x k pose/location observability matrix, a deterministic function
// of (map, graph, fov). Immutable after construction; rows are shared by the
// planner, the detector simulation, and docking.
class VisibilityMatrix {
public:
    VisibilityMatrix(const GridMap& map, const PoseGraph& graph, const FovParams& fov);

    int num_poses() const { return n_; }
    int num_locations() const { return k_; }

    bool sees(int node, int location) const {
        return entries_[static_cast<std::size_t>(node) * k_ + location] != 0;
    }
    std::span<const std::uint8_t> row(int node) const {
        return {entries_.data() + static_cast<std::size_t>(node) * k_,
                static_cast<std::size_t>(k_)};
    }
    // Sorted candidate indices visible from a pose (the pose's FOV set).
    const std::vector<int>& fov_set(int node) const { return fov_sets_[node]; }

    // True if some pose sees the location.
    bool observable(int location) const;

private:
    int n_ = 0;
    int k_ = 0;
    std::vector<std::uint8_t> entries_;
    std::vector<std::vector<int>> fov_sets_;
};

inline VisibilityMatrix compute_visibility(const GridMap& map, const PoseGraph& graph,
                                           const FovParams& fov) {
    return VisibilityMatrix(map, graph, fov);
}

} // namespace avs
