#include <doctest.h>

#include <cmath>
#include <map>

#include "avs/errors.hpp"
#include "avs/pomcp.hpp"
#include "oracles.hpp"
#include "toy_models.hpp"

using namespace avs;
using pomcp::ActionId;

namespace {

// Hand-built node for selection-rule tests (nodes hold a mutex, so heap).
std::unique_ptr<pomcp::BeliefNode<int>> make_node(
    const std::vector<std::pair<double, int>>& q_and_n) {
    auto node = std::make_unique<pomcp::BeliefNode<int>>();
    node->expanded = true;
    node->edges.resize(q_and_n.size());
    for (std::size_t i = 0; i < q_and_n.size(); ++i) {
        node->edges[i].action = static_cast<ActionId>(i);
        node->edges[i].q = q_and_n[i].first;
        node->edges[i].visits = q_and_n[i].second;
        node->visits += q_and_n[i].second;
    }
    return node;
}

template <typename State>
void walk_tree(const pomcp::BeliefNode<State>& node,
               const std::function<void(const pomcp::BeliefNode<State>&)>& visit) {
    visit(node);
    for (const auto& edge : node.edges)
        for (const auto& [obs, child] : edge.children)
            walk_tree(*child, visit);
}

} // namespace

TEST_CASE("uct_select prefers unvisited actions, lowest ordinal first") {
    const auto node = make_node({{0.0, 0}, {0.0, 0}, {0.0, 0}});
    CHECK(pomcp::uct_select(*node, 2.0) == 0);
    const auto partial = make_node({{5.0, 3}, {0.0, 0}, {0.0, 0}});
    CHECK(pomcp::uct_select(*partial, 2.0) == 1);
}

TEST_CASE("uct_select hand-evaluated exploration bonus") {
    // Q = {a0: 1.0 (n=10), a1: 0.5 (n=1)}, N = 11, c = 2:
    // a1 scores 0.5 + 2*sqrt(ln 11 / 1) = 3.597 > a0's 1.990.
    const auto node = make_node({{1.0, 10}, {0.5, 1}});
    CHECK(pomcp::uct_select(*node, 2.0) == 1);
    CHECK(0.5 + 2.0 * std::sqrt(std::log(11.0) / 1.0) == doctest::Approx(3.5973).epsilon(1e-4));
    CHECK(1.0 + 2.0 * std::sqrt(std::log(11.0) / 10.0) == doctest::Approx(1.9796).epsilon(1e-4));
}

TEST_CASE("uct_select with zero exploration is greedy") {
    const auto node = make_node({{1.0, 10}, {0.5, 1}});
    CHECK(pomcp::uct_select(*node, 0.0) == 0);
    // ties break to the lowest ordinal
    const auto tied = make_node({{2.0, 4}, {2.0, 4}});
    CHECK(pomcp::uct_select(*tied, 0.0) == 0);
}

TEST_CASE("plan returns the single legal action regardless of simulations") {
    toy::ChainModel model{{-1.0, -1.0, 5.0}};
    pomcp::Config config;
    config.num_simulations = 1;
    pomcp::Planner planner(model, config);
    Rng rng(3);
    CHECK(planner.plan(pomcp::Belief<int>{{0}}, rng) == 0);
}

TEST_CASE("plan finds the dominant arm over 100 seeds") {
    toy::TwoArmModel model;
    pomcp::Config config;
    config.num_simulations = 50;
    config.uct_c = 200.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        pomcp::Planner planner(model, config);
        Rng rng(seed);
        CHECK(planner.plan(pomcp::Belief<int>{{0}}, rng) == 1);
    }
}

TEST_CASE("plan throws when the root has no legal action") {
    toy::NoActionModel model;
    pomcp::Planner planner(model, pomcp::Config{});
    Rng rng(1);
    CHECK_THROWS_AS(planner.plan(pomcp::Belief<int>{{0}}, rng), NoLegalAction);
    CHECK_THROWS_AS(planner.plan(pomcp::Belief<int>{}, rng), Error);
}

TEST_CASE("depth cutoff returns zero without touching the model") {
    // With max_tree_depth = 0 every simulation is cut off at the root.
    toy::ChainModel model{{100.0}};
    pomcp::Config config;
    config.max_tree_depth = 0;
    config.num_simulations = 64;
    pomcp::Planner planner(model, config);
    Rng rng(5);
    planner.plan(pomcp::Belief<int>{{0}}, rng);
    REQUIRE(planner.root() != nullptr);
    CHECK(planner.root()->visits == 0);
    for (const auto& edge : planner.root()->edges)
        CHECK(edge.visits == 0);
}

TEST_CASE("forced three-step chain backs up the discounted sum") {
    // -1 + 0.95*(-1) + 0.9025*100 = 88.3
    toy::ChainModel model{{-1.0, -1.0, 100.0}};
    pomcp::Config config;
    config.gamma = 0.95;
    config.num_simulations = 8;
    config.max_tree_depth = 10;
    config.rollout_depth = 10;
    pomcp::Planner planner(model, config);
    Rng rng(7);
    planner.plan(pomcp::Belief<int>{{0}}, rng);
    REQUIRE(planner.root()->edges.size() == 1);
    CHECK(planner.root()->edges[0].q == doctest::Approx(88.3).epsilon(1e-12));
}

TEST_CASE("rollout respects its depth budget") {
    toy::ChainModel model{{-1.0, -1.0, -1.0, -1.0, -1.0}};
    SUBCASE("zero depth returns zero") {
        pomcp::Config config;
        config.rollout_depth = 0;
        pomcp::Planner planner(model, config);
        Rng rng(1);
        CHECK(planner.rollout(0, rng) == 0.0);
    }
    SUBCASE("three undiscounted steps of -1") {
        pomcp::Config config;
        config.rollout_depth = 3;
        config.gamma = 1.0; // test-only
        pomcp::Planner planner(model, config);
        Rng rng(1);
        CHECK(planner.rollout(0, rng) == doctest::Approx(-3.0));
    }
}

TEST_CASE("uniform rollout matches the closed-form expectation within 3 sigma") {
    toy::CoinModel model;
    pomcp::Config config;
    config.gamma = 0.95;
    config.rollout_depth = 20;
    pomcp::Planner planner(model, config);
    Rng rng(2024);
    const int n = 10000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
        sum += planner.rollout(0, rng);
    const double mean = sum / n;
    const double gamma = config.gamma;
    const double expected = 0.5 * (1.0 - std::pow(gamma, 20)) / (1.0 - gamma);
    double variance = 0.0;
    for (int d = 0; d < 20; ++d)
        variance += 0.25 * std::pow(gamma, 2 * d);
    const double sigma_mean = std::sqrt(variance / n);
    CHECK(std::abs(mean - expected) < 3.0 * sigma_mean);
}

TEST_CASE("advance reuses the matched child particles") {
    toy::NoisyModel model;
    pomcp::Config config;
    config.num_simulations = 2000;
    config.num_particles = 256; // floor = 16
    pomcp::Planner planner(model, config);
    Rng rng(11);
    pomcp::Belief<int> belief;
    for (int i = 0; i < 256; ++i)
        belief.particles.push_back(static_cast<int>(i % 5));
    const ActionId action = planner.plan(belief, rng);

    // Snapshot the child the advance should hand back.
    const pomcp::BeliefNode<int>* child = nullptr;
    for (const auto& edge : planner.root()->edges)
        if (edge.action == action) {
            auto it = edge.children.find(1);
            if (it != edge.children.end())
                child = it->second.get();
        }
    REQUIRE(child != nullptr);
    const std::vector<int> expected = child->particles;
    REQUIRE(static_cast<int>(expected.size()) >= 16);

    bool fallback_used = false;
    const auto belief2 = planner.advance(action, 1,
                                         [&](int n, Rng& r) {
                                             fallback_used = true;
                                             pomcp::Belief<int> b;
                                             for (int i = 0; i < n; ++i)
                                                 b.particles.push_back(
                                                     static_cast<int>(r.uniform_index(5)));
                                             return b;
                                         },
                                         rng);
    CHECK(!fallback_used);
    CHECK(belief2.particles == expected);
}

TEST_CASE("advance falls back when the child is missing") {
    toy::TwoArmModel model; // terminal steps never create children
    pomcp::Config config;
    config.num_particles = 128;
    pomcp::Planner planner(model, config);
    Rng rng(13);
    const ActionId action = planner.plan(pomcp::Belief<int>{{0}}, rng);
    const auto belief = planner.advance(action, 0,
                                        [](int n, Rng&) {
                                            pomcp::Belief<int> b;
                                            b.particles.assign(n, 42);
                                            return b;
                                        },
                                        rng);
    CHECK(belief.particles.size() == 128);
    CHECK(belief.particles.front() == 42);
}

TEST_CASE("visit accounting holds at every node") {
    toy::NoisyModel model;
    pomcp::Config config;
    config.num_simulations = 500;
    pomcp::Planner planner(model, config);
    Rng rng(17);
    planner.plan(pomcp::Belief<int>{{0, 1, 2}}, rng);
    int nodes = 0;
    walk_tree<int>(*planner.root(), [&](const pomcp::BeliefNode<int>& node) {
        ++nodes;
        int total = 0;
        for (const auto& edge : node.edges)
            total += edge.visits;
        CHECK(node.visits == total);
    });
    CHECK(nodes > 1);
}

TEST_CASE("every Q equals the mean of the returns backed up through it") {
    toy::NoisyModel model;
    pomcp::Config config;
    config.num_simulations = 400;
    pomcp::Planner planner(model, config);
    std::vector<pomcp::BackupEvent> log;
    planner.set_backup_log(&log);
    Rng rng(23);
    planner.plan(pomcp::Belief<int>{{0}}, rng);

    std::map<std::pair<const void*, ActionId>, std::pair<double, int>> sums;
    for (const auto& event : log) {
        auto& [sum, count] = sums[{event.node, event.action}];
        sum += event.value;
        ++count;
    }
    int checked = 0;
    walk_tree<int>(*planner.root(), [&](const pomcp::BeliefNode<int>& node) {
        for (const auto& edge : node.edges) {
            if (edge.visits == 0)
                continue;
            const auto& [sum, count] = sums.at({&node, edge.action});
            CHECK(count == edge.visits);
            CHECK(edge.q == doctest::Approx(sum / count).epsilon(1e-9));
            ++checked;
        }
    });
    CHECK(checked > 3);
}

TEST_CASE("all legal root actions are explored once simulations reach |A|") {
    toy::NoisyModel model;
    pomcp::Config config;
    config.num_simulations = 3;
    pomcp::Planner planner(model, config);
    Rng rng(29);
    planner.plan(pomcp::Belief<int>{{0}}, rng);
    for (const auto& edge : planner.root()->edges)
        CHECK(edge.visits >= 1);
}

TEST_CASE("identical seed and inputs give an identical action") {
    toy::NoisyModel model;
    pomcp::Config config;
    config.num_simulations = 300;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        pomcp::Planner a(model, config), b(model, config);
        Rng ra(seed), rb(seed);
        const pomcp::Belief<int> belief{{0, 1, 2, 3}};
        CHECK(a.plan(belief, ra) == b.plan(belief, rb));
    }
}

TEST_CASE("parallel mode visits the same simulation budget") {
    toy::NoisyModel model;
    pomcp::Config config;
    config.num_simulations = 512;
    config.num_threads = 4;
    pomcp::Planner planner(model, config);
    Rng rng(31);
    planner.plan(pomcp::Belief<int>{{0}}, rng);
    CHECK(planner.root()->visits == 512);
    int total = 0;
    for (const auto& edge : planner.root()->edges)
        total += edge.visits;
    CHECK(total == 512);
}

TEST_CASE("point-mass corridor plan matches horizon-6 expectimax") {
    Scenario scenario("corridor", load_map("o..\n"), 90, FovParams{45.0, 3.0});
    const int start = scenario.graph.node_of(Pose{2, 0, 90});
    REQUIRE(start >= 0);
    VisitedMemory memory{start};

    oracle::Expectimax oracle_planner(scenario, memory, 0.95, 6);
    std::vector<double> belief_vec{1.0};
    double gap = 0.0;
    const Action best = oracle_planner.best_action(start, belief_vec, &gap);
    CHECK(best == RotateCounterClockwise);
    CHECK(gap > 5.0); // the optimum is well separated in this fixture

    AvsModel model(scenario, &memory);
    pomcp::Config config;
    config.gamma = 0.95;
    config.num_simulations = 1 << 12;
    config.uct_c = 200.0;
    config.max_tree_depth = 6;
    config.rollout_depth = 0;
    int agree = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        pomcp::Planner planner(model, config);
        Rng rng(seed);
        pomcp::Belief<AvsState> belief;
        belief.particles.assign(64, AvsState{start, 0});
        if (planner.plan(belief, rng) == best)
            ++agree;
    }
    CHECK(agree >= 19);
}
