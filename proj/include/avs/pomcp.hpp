#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <concepts>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

#include "avs/errors.hpp"
#include "avs/rng.hpp"

namespace avs::pomcp {

using ActionId = int;
using ObsId = int;

struct Config {
    double gamma = 0.95;
    int num_simulations = 1 << 10;
    double uct_c = 200.0;
    int max_tree_depth = 30;
    int rollout_depth = 30;
    int num_particles = 1 << 10;
    // The belief advance falls back to the domain resampler below
    // num_particles / particle_floor_divisor particles.
    int particle_floor_divisor = 16;
    // 1 = strictly sequential reference mode; >1 runs simulations in parallel
    // with per-simulation RNG substreams and per-node serialized backups.
    int num_threads = 1;
};

template <typename State>
struct StepResult {
    State next;
    ObsId observation = 0;
    double reward = 0.0;
    bool terminal = false;
};

// Black-box simulator contract: a pure function of (state, action, rng).
template <typename M>
concept GenerativeModel = requires(const M& m, const typename M::State& s, ActionId a, Rng& rng) {
    { m.step(s, a, rng) } -> std::same_as<StepResult<typename M::State>>;
    { m.legal_actions(s) } -> std::convertible_to<std::vector<ActionId>>;
    { m.sample_rollout_action(s, rng) } -> std::same_as<ActionId>;
};

// Unweighted particle filter.
template <typename State>
struct Belief {
    std::vector<State> particles;
};

template <typename State>
struct BeliefNode;

template <typename State>
struct ActionEdge {
    ActionId action = -1;
    int visits = 0;  // N(h, a)
    double q = 0.0;  // running mean of backed-up returns
    std::map<ObsId, std::unique_ptr<BeliefNode<State>>> children;
};

template <typename State>
struct BeliefNode {
    int visits = 0; // N(h) = sum over edges of N(h, a)
    bool expanded = false;
    std::vector<State> particles;
    std::vector<ActionEdge<State>> edges; // sorted by action ordinal
    std::mutex mutex;                     // parallel mode only
};

// UCT rule: argmax over Q(h,a) + uct_c * sqrt(ln N(h) / N(h,a)). Unvisited
// actions win over any visited one; all ties break to the lowest ordinal.
template <typename State>
std::size_t uct_select_index(const BeliefNode<State>& node, double uct_c) {
    for (std::size_t i = 0; i < node.edges.size(); ++i)
        if (node.edges[i].visits == 0)
            return i;
    const double log_n = std::log(static_cast<double>(node.visits));
    std::size_t best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < node.edges.size(); ++i) {
        const auto& e = node.edges[i];
        const double value = e.q + uct_c * std::sqrt(log_n / e.visits);
        if (value > best_value) {
            best_value = value;
            best = i;
        }
    }
    return best;
}

template <typename State>
ActionId uct_select(const BeliefNode<State>& node, double uct_c) {
    return node.edges[uct_select_index(node, uct_c)].action;
}

// One backed-up return, for the Q-consistency check in tests.
struct BackupEvent {
    const void* node;
    ActionId action;
    double value;
};

template <typename M>
    requires GenerativeModel<M>
class Planner {
public:
    using State = typename M::State;
    using Node = BeliefNode<State>;
    using FallbackResampler = std::function<Belief<State>(int, Rng&)>;

    Planner(const M& model, Config config) : model_(&model), config_(config) {}

    const Config& config() const { return config_; }
    const Node* root() const { return root_.get(); }

    // Builds a fresh search tree from the belief and returns the root action
    // with the highest Q estimate (ties to the lowest ordinal).
    ActionId plan(const Belief<State>& belief, Rng& rng) {
        if (belief.particles.empty())
            throw Error("plan() requires a non-empty belief");
        root_ = std::make_unique<Node>();
        root_->particles = belief.particles;
        expand(*root_, belief.particles.front());
        if (root_->edges.empty())
            throw NoLegalAction("no legal action at planning root");

        if (config_.num_threads <= 1) {
            for (int i = 0; i < config_.num_simulations; ++i) {
                State s = belief.particles[rng.uniform_index(belief.particles.size())];
                simulate(std::move(s), root_.get(), 0, rng);
            }
        } else {
            run_parallel(belief, rng);
        }

        std::size_t best = 0;
        for (std::size_t i = 1; i < root_->edges.size(); ++i)
            if (root_->edges[i].q > root_->edges[best].q)
                best = i;
        return root_->edges[best].action;
    }

    // Next-step belief: the particle set of the (action, observation) child,
    // or the fallback resampler's output when the child is missing or too
    // thin. The tree is discarded either way.
    Belief<State> advance(ActionId action, ObsId observation, const FallbackResampler& fallback,
                          Rng& rng) {
        const int floor =
            std::max(1, config_.num_particles / std::max(1, config_.particle_floor_divisor));
        Belief<State> next;
        if (root_) {
            for (auto& edge : root_->edges) {
                if (edge.action != action)
                    continue;
                auto it = edge.children.find(observation);
                if (it != edge.children.end() &&
                    static_cast<int>(it->second->particles.size()) >= floor)
                    next.particles = std::move(it->second->particles);
                break;
            }
        }
        root_.reset();
        if (next.particles.empty())
            next = fallback(config_.num_particles, rng);
        return next;
    }

    // Uniform-random playout from a leaf; no tree statistics are touched.
    double rollout(State state, Rng& rng) const {
        double total = 0.0;
        double discount = 1.0;
        for (int d = 0; d < config_.rollout_depth; ++d) {
            const ActionId a = model_->sample_rollout_action(state, rng);
            StepResult<State> sr = model_->step(state, a, rng);
            total += discount * sr.reward;
            if (sr.terminal)
                break;
            discount *= config_.gamma;
            state = std::move(sr.next);
        }
        return total;
    }

    void set_backup_log(std::vector<BackupEvent>* log) { backup_log_ = log; }

private:
    void expand(Node& node, const State& s) const {
        std::vector<ActionId> actions = model_->legal_actions(s);
        std::sort(actions.begin(), actions.end());
        node.edges.resize(actions.size());
        for (std::size_t i = 0; i < actions.size(); ++i)
            node.edges[i].action = actions[i];
        node.expanded = true;
    }

    double simulate(State state, Node* node, int depth, Rng& rng) {
        if (depth >= config_.max_tree_depth)
            return 0.0;
        if (!node->expanded)
            expand(*node, state);
        if (node->edges.empty())
            return 0.0;
        auto& edge = node->edges[uct_select_index(*node, config_.uct_c)];

        StepResult<State> sr = model_->step(state, edge.action, rng);
        double ret;
        if (sr.terminal) {
            ret = sr.reward;
        } else {
            auto it = edge.children.find(sr.observation);
            if (it == edge.children.end()) {
                auto child = std::make_unique<Node>();
                child->particles.push_back(sr.next);
                edge.children.emplace(sr.observation, std::move(child));
                ret = sr.reward + config_.gamma * rollout(std::move(sr.next), rng);
            } else {
                it->second->particles.push_back(sr.next);
                ret = sr.reward +
                      config_.gamma * simulate(std::move(sr.next), it->second.get(), depth + 1, rng);
            }
        }
        edge.visits += 1;
        edge.q += (ret - edge.q) / edge.visits;
        node->visits += 1;
        if (backup_log_)
            backup_log_->push_back({node, edge.action, ret});
        return ret;
    }

    // Parallel variant: per-node locking serializes selection, child creation
    // and backups; descent and model calls run unlocked. Not bit-identical to
    // the sequential reference.
    double simulate_locked(State state, Node* node, int depth, Rng& rng) {
        if (depth >= config_.max_tree_depth)
            return 0.0;
        std::size_t edge_index;
        {
            std::scoped_lock lk(node->mutex);
            if (!node->expanded)
                expand(*node, state);
            if (node->edges.empty())
                return 0.0;
            edge_index = uct_select_index(*node, config_.uct_c);
        }
        auto& edge = node->edges[edge_index];

        StepResult<State> sr = model_->step(state, edge.action, rng);
        double ret;
        if (sr.terminal) {
            ret = sr.reward;
        } else {
            Node* child = nullptr;
            bool created = false;
            {
                std::scoped_lock lk(node->mutex);
                auto it = edge.children.find(sr.observation);
                if (it == edge.children.end()) {
                    it = edge.children.emplace(sr.observation, std::make_unique<Node>()).first;
                    created = true;
                }
                child = it->second.get();
            }
            {
                std::scoped_lock lk(child->mutex);
                child->particles.push_back(sr.next);
            }
            if (created)
                ret = sr.reward + config_.gamma * rollout(std::move(sr.next), rng);
            else
                ret = sr.reward +
                      config_.gamma * simulate_locked(std::move(sr.next), child, depth + 1, rng);
        }
        {
            std::scoped_lock lk(node->mutex);
            edge.visits += 1;
            edge.q += (ret - edge.q) / edge.visits;
            node->visits += 1;
        }
        return ret;
    }

    void run_parallel(const Belief<State>& belief, Rng& rng) {
        const std::uint64_t base = rng.next_u64();
        std::atomic<int> next_sim{0};
        auto worker = [&] {
            for (;;) {
                const int i = next_sim.fetch_add(1);
                if (i >= config_.num_simulations)
                    return;
                Rng sub(derive_seed(base, static_cast<std::uint64_t>(i)));
                State s = belief.particles[sub.uniform_index(belief.particles.size())];
                simulate_locked(std::move(s), root_.get(), 0, sub);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < config_.num_threads; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }

    const M* model_;
    Config config_;
    std::unique_ptr<Node> root_;
    std::vector<BackupEvent>* backup_log_ = nullptr;
};

} // namespace avs::pomcp
