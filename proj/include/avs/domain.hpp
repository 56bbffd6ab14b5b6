#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "avs/detection.hpp"
#include "avs/pomcp.hpp"
#include "avs/scenario.hpp"

namespace avs {

// Hidden search state: the (fully observed) agent pose node plus the
// (hidden) target location.
struct AvsState {
    int pose = -1;
    int target = -1;

    bool operator==(const AvsState&) const = default;
};

// Poses already visited in the current episode, keyed on the full (x, y,
// theta) node.
using VisitedMemory = std::unordered_set<int>;

// Candidate locations not yet ruled out by negative observations. Shrinks
// monotonically within an episode.
struct EliminationSet {
    std::vector<int> locations; // sorted

    static EliminationSet full(int k);
    bool contains(int j) const;
    int size() const { return static_cast<int>(locations.size()); }
    bool empty() const { return locations.empty(); }
};

// No detection removes the whole FOV set from pp; a detection removes
// nothing (the frame supports presence, and it may be a false positive).
EliminationSet update_pp(const EliminationSet& pp, std::span<const int> fov_set,
                         const std::optional<Detection>& detection);

// Initial belief: the known start pose with the target uniform over all k
// locations.
pomcp::Belief<AvsState> init_belief(int k, int start_pose, int num_particles, Rng& rng);

// Belief-by-exploration resample: current pose with the target uniform over
// pp. Throws EmptyEliminationSet when every location has been ruled out.
pomcp::Belief<AvsState> resample_belief_be(const EliminationSet& pp, int current_pose,
                                           int num_particles, Rng& rng);

// Generative model handed to the POMCP solver. The pose advances along the
// graph (blocked moves are masked out by legal_actions), the target is
// static, the simulated observation is the visibility bit, and observing the
// target is terminal.
class AvsModel {
public:
    using State = AvsState;

    AvsModel(const Scenario& scenario, const VisitedMemory* visited)
        : scenario_(&scenario), visited_(visited) {}

    pomcp::StepResult<AvsState> step(const AvsState& s, pomcp::ActionId a, Rng& rng) const;
    std::vector<pomcp::ActionId> legal_actions(const AvsState& s) const;
    pomcp::ActionId sample_rollout_action(const AvsState& s, Rng& rng) const;

private:
    const Scenario* scenario_;
    const VisitedMemory* visited_; // snapshot of the real-world memory
};

// Exploration-phase driver: one real step = plan, move, sense, likelihood,
// posterior, pp, belief advance/resample, memory, exit test.
class SearchAgent {
public:
    using DetectorFn = std::function<std::optional<Detection>(
        int step_index, std::span<const int> fov_set, int true_location, Rng& rng)>;

    struct StepOutcome {
        Action action = MoveForward;
        int pose = -1; // node index after the move
        std::optional<Detection> detection;
        bool exit_fired = false;
        int exit_location = -1;
    };

    SearchAgent(const Scenario& scenario, const TargetSpec& target, int true_location,
                PlannerVariant variant, const pomcp::Config& config, int start_pose,
                std::uint64_t seed);

    StepOutcome step();

    int current_pose() const { return pose_; }
    int steps() const { return steps_; }
    int detector_calls() const { return detector_calls_; }
    const ProbabilityField& posterior() const { return posterior_; }
    const EliminationSet& pp() const { return pp_; }
    const VisitedMemory& visited() const { return visited_; }
    const pomcp::Belief<AvsState>& belief() const { return belief_; }

    // Replaces the statistical detector (scripted frames in tests).
    void set_detector(DetectorFn fn) { detector_ = std::move(fn); }

private:
    const Scenario* scenario_;
    const TargetSpec* target_;
    int true_location_;
    PlannerVariant variant_;
    double tau_;
    Rng rng_;

    VisitedMemory visited_;
    AvsModel model_;
    pomcp::Planner<AvsModel> planner_;
    pomcp::Belief<AvsState> belief_;
    EliminationSet pp_;
    ProbabilityField posterior_;
    DetectorFn detector_;

    int pose_;
    int steps_ = 0;
    int detector_calls_ = 0;
};

} // namespace avs
