#include "avs/episode.hpp"

#include <cmath>
#include <queue>

#include "avs/docking.hpp"
#include "avs/errors.hpp"

namespace avs {
namespace {

// Unit-step BFS distance from src to the nearest pose in `goals`; -1 when
// none is reachable. Independent of the planner and of Dijkstra.
int bfs_to_nearest(const PoseGraph& graph, int src, const std::vector<int>& goals) {
    if (goals.empty())
        return -1;
    std::vector<std::uint8_t> is_goal(graph.num_nodes(), 0);
    for (int g : goals)
        is_goal[g] = 1;
    std::vector<int> dist(graph.num_nodes(), -1);
    std::queue<int> queue;
    dist[src] = 0;
    queue.push(src);
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop();
        if (is_goal[v])
            return dist[v];
        for (Action a : kAllActions) {
            const int u = graph.neighbor(v, a);
            if (u >= 0 && dist[u] < 0) {
                dist[u] = dist[v] + 1;
                queue.push(u);
            }
        }
    }
    return -1;
}

} // namespace

const char* failure_name(FailureClass f) {
    switch (f) {
    case FailureClass::None: return "none";
    case FailureClass::Localisation: return "localisation";
    case FailureClass::Docking: return "docking";
    case FailureClass::Other: return "other";
    }
    return "?";
}

FailureClass parse_failure(const std::string& name) {
    if (name == "none")
        return FailureClass::None;
    if (name == "localisation")
        return FailureClass::Localisation;
    if (name == "docking")
        return FailureClass::Docking;
    if (name == "other")
        return FailureClass::Other;
    throw ParseError("unknown failure class: " + name);
}

std::vector<int> goal_pose_set(const Scenario& scenario, int target_location) {
    const auto [tx, ty] = scenario.map.candidate_cell(target_location);
    std::vector<int> goals;
    for (int i = 0; i < scenario.graph.num_nodes(); ++i) {
        if (!scenario.visibility.sees(i, target_location))
            continue;
        const Pose& p = scenario.graph.pose(i);
        const double dist =
            std::hypot(static_cast<double>(tx - p.x), static_cast<double>(ty - p.y));
        if (dist <= scenario.d_goal + 1e-9)
            goals.push_back(i);
    }
    return goals;
}

bool judge_success(int final_pose, const std::vector<int>& goal_set, int steps_taken,
                   int episode_cap) {
    if (steps_taken > episode_cap)
        return false;
    for (int g : goal_set)
        if (g == final_pose)
            return true;
    return false;
}

EpisodeResult run_episode(const Scenario& scenario, std::size_t target_index,
                          PlannerVariant variant, const pomcp::Config& config, std::uint64_t seed,
                          const HeatmapSink& heatmap_sink) {
    const TargetSpec& target = scenario.targets.at(target_index);

    EpisodeResult result;
    result.scenario = scenario.name;
    result.variant = variant_name(variant);
    result.target = target.id;
    result.seed = seed;

    // Identity-keyed stream: scenario and target feed the seed, the variant
    // does not, so variants see paired start poses and target locations.
    const std::uint64_t stream = derive_seed(fnv1a(scenario.name) ^ fnv1a(target.id), seed);
    Rng setup_rng(derive_seed(stream, 0x5e70aULL));
    const int k = scenario.num_locations();
    result.true_location =
        target.location >= 0 ? target.location : static_cast<int>(setup_rng.uniform_index(k));

    int start_pose;
    if (scenario.start_pose) {
        start_pose = scenario.graph.node_of(*scenario.start_pose);
        if (start_pose < 0)
            throw ConfigError("scenario start pose is not a node of the pose graph");
    } else {
        start_pose = static_cast<int>(setup_rng.uniform_index(scenario.graph.num_nodes()));
    }

    const std::vector<int> goals = goal_pose_set(scenario, result.true_location);
    const int oracle = bfs_to_nearest(scenario.graph, start_pose, goals);
    result.shortest_possible = oracle >= 0 ? oracle : 0;

    SearchAgent agent(scenario, target, result.true_location, variant, config, start_pose,
                      derive_seed(stream, 0xa9e47ULL));

    result.trajectory.push_back(start_pose);
    bool exited = false;
    int exit_location = -1;
    int exit_pose = -1;
    FailureClass abort_class = FailureClass::None;

    while (agent.steps() < scenario.episode_cap) {
        SearchAgent::StepOutcome out;
        try {
            out = agent.step();
        } catch (const DegeneratePosterior&) {
            abort_class = FailureClass::Other;
            break;
        } catch (const EmptyEliminationSet&) {
            abort_class = FailureClass::Other;
            break;
        } catch (const AllZeroField&) {
            abort_class = FailureClass::Other;
            break;
        }
        result.trajectory.push_back(out.pose);
        if (heatmap_sink)
            heatmap_sink(agent.steps() - 1, agent.posterior());
        if (out.exit_fired) {
            exited = true;
            exit_location = out.exit_location;
            exit_pose = out.pose;
            break;
        }
    }
    int steps = agent.steps();
    result.exit_step = exited ? steps : -1;
    int final_pose = result.trajectory.back();

    if (exited) {
        try {
            const int dst =
                destination_pose(exit_location, scenario.graph, scenario.visibility, scenario.map);
            const DockingPlan plan = shortest_path(scenario.graph, final_pose, dst);
            for (const auto& [action, node] : plan.path) {
                if (steps >= scenario.episode_cap)
                    break; // cap exceeded mid-docking
                (void)action;
                final_pose = node;
                result.trajectory.push_back(node);
                ++steps;
                ++result.docking_steps;
            }
        } catch (const Unreachable&) {
            // arrival fails; classified below
        }
    }

    result.steps_taken = steps;
    result.success = judge_success(final_pose, goals, steps, scenario.episode_cap);

    if (result.success) {
        result.failure = FailureClass::None;
    } else if (abort_class != FailureClass::None) {
        result.failure = abort_class;
    } else if (!exited) {
        result.failure = FailureClass::Other;
    } else if (!scenario.visibility.sees(exit_pose, result.true_location)) {
        result.failure = FailureClass::Localisation;
    } else {
        result.failure = FailureClass::Docking;
    }
    return result;
}

} // namespace avs
