#pragma once

#include <optional>
#include <string>
#include <vector>

#include "avs/detection.hpp"
#include "avs/grid_map.hpp"
#include "avs/pomcp.hpp"
#include "avs/pose_graph.hpp"
#include "avs/visibility.hpp"

namespace avs {

struct RewardSpec {
    double found = 100.0;   // target observed
    double step = -1.0;     // motion energy
    double revisit = -10.0; // entering an already-visited pose
};

// The four planner modes differ only in the belief update strategy (standard
// tree advance vs full uniform-over-pp resample) and the exit rule (first raw
// detection vs the posterior threshold test).
enum class PlannerVariant {
    Pomp,
    PompBe,
    PompPd,
    PompBePd,
};

inline bool variant_uses_be(PlannerVariant v) {
    return v == PlannerVariant::PompBe || v == PlannerVariant::PompBePd;
}
inline bool variant_uses_pd(PlannerVariant v) {
    return v == PlannerVariant::PompPd || v == PlannerVariant::PompBePd;
}
const char* variant_name(PlannerVariant v);
PlannerVariant parse_variant(const std::string& name);

struct TargetSpec {
    std::string id;
    int location = -1; // fixed candidate index; -1 = sampled uniformly per episode
    DetectorStats detector;
    double sigma = 1.0; // spread of the detected-case Gaussian, in cells
};

// Immutable world bundle shared by planner, detector and docking. Safe to use
// from concurrent episodes.
struct Scenario {
    Scenario(std::string scenario_name, GridMap grid, int rotation_step, FovParams fov_params)
        : name(std::move(scenario_name)),
          map(std::move(grid)),
          graph(map, rotation_step),
          visibility(map, graph, fov_params),
          delta_theta(rotation_step),
          fov(fov_params) {}

    std::string name;
    GridMap map;
    PoseGraph graph;
    VisibilityMatrix visibility;
    int delta_theta;
    FovParams fov;

    std::vector<TargetSpec> targets;
    std::optional<Pose> start_pose; // nullopt = sampled uniformly per episode
    RewardSpec rewards;
    int episode_cap = 200;
    ExitThreshold exit;
    double d_goal = 2.0; // success radius around the target cell, in cells
    LikelihoodConvention likelihood_convention = LikelihoodConvention::Figure;

    int num_locations() const { return map.num_candidates(); }
};

struct SuiteConfig {
    pomcp::Config pomcp;
    std::vector<PlannerVariant> variants;
    std::vector<std::uint64_t> seeds;
    std::vector<Scenario> scenarios;
};

// Parses the JSON suite configuration (sections: scenarios with map/fov/
// detector/rewards/exit, pomcp, protocol). Map sources may be a file path
// (relative to the config file), inline text, or generation parameters.
SuiteConfig load_suite_config(const std::string& path);
SuiteConfig parse_suite_config(const std::string& json_text, const std::string& base_dir);

} // namespace avs
