#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "avs/detection.hpp"
#include "avs/domain.hpp"
#include "avs/scenario.hpp"

namespace avs {

enum class FailureClass {
    None,
    Localisation, // exit fired but the true target was not in the exit-pose FOV
    Docking,      // exit was correct but the agent failed to arrive
    Other,        // timeout, degenerate posterior, empty elimination set
};

const char* failure_name(FailureClass f);
FailureClass parse_failure(const std::string& name);

struct EpisodeResult {
    std::string scenario;
    std::string variant;
    std::string target;
    std::uint64_t seed = 0;

    bool success = false;         // S_i
    int steps_taken = 0;          // p_i, real steps including docking
    int shortest_possible = 0;    // l_i, oracle distance start -> nearest goal pose
    FailureClass failure = FailureClass::None;
    std::vector<int> trajectory;  // node indices, starting pose first
    int true_location = -1;
    int exit_step = -1;           // -1 when the exit condition never fired
    int docking_steps = 0;

    double spl_term() const {
        if (!success)
            return 0.0;
        const int denom = std::max(steps_taken, shortest_possible);
        return denom > 0 ? static_cast<double>(shortest_possible) / denom : 1.0;
    }
};

// Poses that count as arrival: within d_goal cells of the target cell and
// seeing it.
std::vector<int> goal_pose_set(const Scenario& scenario, int target_location);

bool judge_success(int final_pose, const std::vector<int>& goal_set, int steps_taken,
                   int episode_cap);

// Observer for the posterior after each real exploration step.
using HeatmapSink = std::function<void(int step_index, const ProbabilityField& posterior)>;

// Runs exploration then docking for one target under one planner variant,
// fully reproducible from the seed. All failures become classified results.
EpisodeResult run_episode(const Scenario& scenario, std::size_t target_index,
                          PlannerVariant variant, const pomcp::Config& config, std::uint64_t seed,
                          const HeatmapSink& heatmap_sink = nullptr);

} // namespace avs
