#include "avs/domain.hpp"

#include <algorithm>

#include "avs/errors.hpp"

namespace avs {

const char* variant_name(PlannerVariant v) {
    switch (v) {
    case PlannerVariant::Pomp: return "pomp";
    case PlannerVariant::PompBe: return "pomp-be";
    case PlannerVariant::PompPd: return "pomp-pd";
    case PlannerVariant::PompBePd: return "pomp-be-pd";
    }
    return "?";
}

PlannerVariant parse_variant(const std::string& name) {
    if (name == "pomp")
        return PlannerVariant::Pomp;
    if (name == "pomp-be")
        return PlannerVariant::PompBe;
    if (name == "pomp-pd")
        return PlannerVariant::PompPd;
    if (name == "pomp-be-pd")
        return PlannerVariant::PompBePd;
    throw ConfigError("unknown planner variant: " + name);
}

EliminationSet EliminationSet::full(int k) {
    EliminationSet pp;
    pp.locations.resize(k);
    for (int j = 0; j < k; ++j)
        pp.locations[j] = j;
    return pp;
}

bool EliminationSet::contains(int j) const {
    return std::binary_search(locations.begin(), locations.end(), j);
}

EliminationSet update_pp(const EliminationSet& pp, std::span<const int> fov_set,
                         const std::optional<Detection>& detection) {
    if (detection)
        return pp;
    EliminationSet next;
    next.locations.reserve(pp.locations.size());
    std::set_difference(pp.locations.begin(), pp.locations.end(), fov_set.begin(), fov_set.end(),
                        std::back_inserter(next.locations));
    return next;
}

pomcp::Belief<AvsState> init_belief(int k, int start_pose, int num_particles, Rng& rng) {
    pomcp::Belief<AvsState> belief;
    belief.particles.reserve(num_particles);
    for (int i = 0; i < num_particles; ++i)
        belief.particles.push_back({start_pose, static_cast<int>(rng.uniform_index(k))});
    return belief;
}

pomcp::Belief<AvsState> resample_belief_be(const EliminationSet& pp, int current_pose,
                                           int num_particles, Rng& rng) {
    if (pp.empty())
        throw EmptyEliminationSet("every candidate location has been ruled out");
    pomcp::Belief<AvsState> belief;
    belief.particles.reserve(num_particles);
    for (int i = 0; i < num_particles; ++i) {
        const int j = pp.locations[rng.uniform_index(pp.locations.size())];
        belief.particles.push_back({current_pose, j});
    }
    return belief;
}

pomcp::StepResult<AvsState> AvsModel::step(const AvsState& s, pomcp::ActionId a, Rng&) const {
    int next_pose = scenario_->graph.neighbor(s.pose, static_cast<Action>(a));
    if (next_pose < 0)
        next_pose = s.pose; // blocked moves are masked by legal_actions
    const bool seen = scenario_->visibility.sees(next_pose, s.target);
    double reward;
    if (seen)
        reward = scenario_->rewards.found;
    else if (visited_ && visited_->count(next_pose))
        reward = scenario_->rewards.revisit;
    else
        reward = scenario_->rewards.step;
    return {AvsState{next_pose, s.target}, seen ? 1 : 0, reward, seen};
}

std::vector<pomcp::ActionId> AvsModel::legal_actions(const AvsState& s) const {
    std::vector<pomcp::ActionId> out;
    out.reserve(kNumActions);
    for (Action a : kAllActions)
        if (a == RotateClockwise || a == RotateCounterClockwise ||
            scenario_->graph.neighbor(s.pose, a) >= 0)
            out.push_back(a);
    std::sort(out.begin(), out.end());
    return out;
}

pomcp::ActionId AvsModel::sample_rollout_action(const AvsState& s, Rng& rng) const {
    const auto legal = legal_actions(s);
    return legal[rng.uniform_index(legal.size())];
}

SearchAgent::SearchAgent(const Scenario& scenario, const TargetSpec& target, int true_location,
                         PlannerVariant variant, const pomcp::Config& config, int start_pose,
                         std::uint64_t seed)
    : scenario_(&scenario),
      target_(&target),
      true_location_(true_location),
      variant_(variant),
      tau_(scenario.exit.tau(scenario.num_locations())),
      rng_(seed),
      model_(scenario, &visited_),
      planner_(model_, config),
      pp_(EliminationSet::full(scenario.num_locations())),
      posterior_(ProbabilityField::uniform(scenario.num_locations())),
      pose_(start_pose) {
    visited_.insert(pose_);
    belief_ = init_belief(scenario.num_locations(), pose_, config.num_particles, rng_);
    detector_ = [this](int, std::span<const int> fov, int true_loc, Rng& rng) {
        return simulate_detection(fov, true_loc, target_->detector, rng);
    };
}

SearchAgent::StepOutcome SearchAgent::step() {
    StepOutcome out;
    out.action = static_cast<Action>(planner_.plan(belief_, rng_));
    const int next = scenario_->graph.neighbor(pose_, out.action);
    pose_ = next >= 0 ? next : pose_;
    out.pose = pose_;

    const auto& fov = scenario_->visibility.fov_set(pose_);
    ++detector_calls_;
    out.detection = detector_(steps_, fov, true_location_, rng_);

    const LikelihoodField lik =
        step_likelihood(scenario_->map, fov, out.detection, target_->detector, target_->sigma,
                        scenario_->likelihood_convention);
    posterior_ = update_posterior(posterior_, lik);
    pp_ = update_pp(pp_, fov, out.detection);

    const pomcp::ObsId obs = out.detection ? 1 : 0;
    if (variant_uses_be(variant_)) {
        // Full replacement: uniform over the not-yet-ruled-out locations.
        belief_ = resample_belief_be(pp_, pose_, planner_.config().num_particles, rng_);
    } else {
        belief_ = planner_.advance(
            out.action, obs,
            [&](int n, Rng& rng) { return resample_belief_be(pp_, pose_, n, rng); }, rng_);
    }

    visited_.insert(pose_);
    ++steps_;

    if (variant_uses_pd(variant_)) {
        const auto exit = check_exit(posterior_, scenario_->visibility.row(pose_), tau_);
        if (exit) {
            out.exit_fired = true;
            out.exit_location = *exit;
        }
    } else if (out.detection) {
        out.exit_fired = true;
        out.exit_location = out.detection->location;
    }
    return out;
}

} // namespace avs
