#include "avs/visibility.hpp"

#include <cmath>
#include <cstdlib>

namespace avs {
namespace {

constexpr double kAngleEps = 1e-9;

double wrap_angle_deg(double a) {
    a = std::fmod(a, 360.0);
    if (a > 180.0)
        a -= 360.0;
    if (a < -180.0)
        a += 360.0;
    return a;
}

} // namespace

std::vector<std::pair<int, int>> supercover_line(int x0, int y0, int x1, int y1) {
    std::vector<std::pair<int, int>> out;
    int dx = x1 - x0, dy = y1 - y0;
    const int xstep = dx >= 0 ? 1 : -1;
    const int ystep = dy >= 0 ? 1 : -1;
    dx = std::abs(dx);
    dy = std::abs(dy);
    const int ddx = 2 * dx, ddy = 2 * dy;

    int x = x0, y = y0;
    if (ddx >= ddy) {
        int error = dx, errorprev = dx;
        for (int i = 0; i < dx; ++i) {
            x += xstep;
            error += ddy;
            if (error > ddx) {
                y += ystep;
                error -= ddx;
                if (error + errorprev < ddx) {
                    out.emplace_back(x, y - ystep);
                } else if (error + errorprev > ddx) {
                    out.emplace_back(x - xstep, y);
                } else { // exact corner crossing: both bordering cells
                    out.emplace_back(x, y - ystep);
                    out.emplace_back(x - xstep, y);
                }
            }
            out.emplace_back(x, y);
            errorprev = error;
        }
    } else {
        int error = dy, errorprev = dy;
        for (int i = 0; i < dy; ++i) {
            y += ystep;
            error += ddx;
            if (error > ddy) {
                x += xstep;
                error -= ddy;
                if (error + errorprev < ddy) {
                    out.emplace_back(x - xstep, y);
                } else if (error + errorprev > ddy) {
                    out.emplace_back(x, y - ystep);
                } else {
                    out.emplace_back(x - xstep, y);
                    out.emplace_back(x, y - ystep);
                }
            }
            out.emplace_back(x, y);
            errorprev = error;
        }
    }
    return out;
}

std::vector<int> visible_locations(const GridMap& map, const Pose& pose, const FovParams& fov) {
    std::vector<int> out;
    const int k = map.num_candidates();
    for (int j = 0; j < k; ++j) {
        const auto [cx, cy] = map.candidate_cell(j);
        const double vx = cx - pose.x;
        const double vy = cy - pose.y;
        const double dist = std::hypot(vx, vy);
        if (dist > fov.max_range + kAngleEps)
            continue;
        // Grid y grows southward; flip for the math-convention bearing.
        const double bearing = std::atan2(-vy, vx) * (180.0 / 3.14159265358979323846);
        if (std::abs(wrap_angle_deg(bearing - pose.theta)) > fov.half_angle_deg + kAngleEps)
            continue;
        bool blocked = false;
        for (const auto& [rx, ry] : supercover_line(pose.x, pose.y, cx, cy)) {
            if (map.at(rx, ry) == Cell::Occlusion) {
                blocked = true;
                break;
            }
        }
        if (!blocked)
            out.push_back(j);
    }
    return out;
}

VisibilityMatrix::VisibilityMatrix(const GridMap& map, const PoseGraph& graph,
                                   const FovParams& fov)
    : n_(graph.num_nodes()), k_(map.num_candidates()) {
    entries_.assign(static_cast<std::size_t>(n_) * k_, 0);
    fov_sets_.resize(n_);
    for (int i = 0; i < n_; ++i) {
        fov_sets_[i] = visible_locations(map, graph.pose(i), fov);
        for (int j : fov_sets_[i])
            entries_[static_cast<std::size_t>(i) * k_ + j] = 1;
    }
}

bool VisibilityMatrix::observable(int location) const {
    for (int i = 0; i < n_; ++i)
        if (sees(i, location))
            return true;
    return false;
}

} // namespace avs
