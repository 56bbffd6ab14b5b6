#include <doctest.h>

#include <cmath>
#include <set>

#include "avs/domain.hpp"
#include "avs/errors.hpp"
#include "oracles.hpp"

using namespace avs;

namespace {

Scenario corridor_scenario() {
    // o . .  with a perfect detector target at the west end
    Scenario scenario("corridor", load_map("o..\n"), 90, FovParams{45.0, 3.0});
    scenario.targets.push_back({"t", 0, DetectorStats{1.0, 1.0, 0.0, 0.9, 1.0}, 1.0});
    return scenario;
}

} // namespace

TEST_CASE("generative step rewards and terminal rule") {
    Scenario scenario = corridor_scenario();
    const int start = scenario.graph.node_of(Pose{2, 0, 180});
    REQUIRE(start >= 0);
    VisitedMemory memory{start};
    AvsModel model(scenario, &memory);
    Rng rng(1);

    SUBCASE("moving into sight of the target pays the discovery reward") {
        // From (2,0,180) the target is already visible; step from (2,0,90):
        // rotating counter-clockwise lands on 180 and sees it.
        const int side = scenario.graph.node_of(Pose{2, 0, 90});
        const auto result = model.step(AvsState{side, 0}, RotateCounterClockwise, rng);
        CHECK(result.next.pose == start);
        CHECK(result.observation == 1);
        CHECK(result.reward == doctest::Approx(scenario.rewards.found));
        CHECK(result.terminal);
    }
    SUBCASE("rotating into a visited pose pays the revisit penalty") {
        const int side = scenario.graph.node_of(Pose{2, 0, 270});
        memory.insert(side);
        const int away = scenario.graph.node_of(Pose{2, 0, 0});
        const auto result = model.step(AvsState{away, 0}, RotateClockwise, rng);
        CHECK(result.next.pose == side);
        CHECK(result.observation == 0);
        CHECK(result.reward == doctest::Approx(scenario.rewards.revisit));
        CHECK(!result.terminal);
    }
    SUBCASE("ordinary motion pays the step cost") {
        const int away = scenario.graph.node_of(Pose{2, 0, 0});
        const auto result = model.step(AvsState{away, 0}, RotateCounterClockwise, rng);
        CHECK(result.reward == doctest::Approx(scenario.rewards.step));
        CHECK(!result.terminal);
    }
}

TEST_CASE("corridor transitions match an exhaustive hand enumeration") {
    Scenario scenario = corridor_scenario();
    VisitedMemory memory;
    AvsModel model(scenario, &memory);
    Rng rng(2);
    for (int node = 0; node < scenario.graph.num_nodes(); ++node) {
        for (Action a : kAllActions) {
            const auto result = model.step(AvsState{node, 0}, a, rng);
            // Expected pose: graph edge target, or self when blocked.
            const int expected_edge = scenario.graph.neighbor(node, a);
            const int expected_pose = expected_edge >= 0 ? expected_edge : node;
            CHECK(result.next.pose == expected_pose);
            CHECK(result.next.target == 0);
            CHECK(result.observation ==
                  (scenario.visibility.sees(expected_pose, 0) ? 1 : 0));
            CHECK(result.terminal == (result.observation == 1));
        }
    }
}

TEST_CASE("legal actions mirror the pose graph edges") {
    // 6x6 interior with scattered walls and one candidate
    Scenario scenario("room", load_map("......\n.#..#.\n..o...\n......\n.#..#.\n......\n"), 90,
                      FovParams{45.0, 5.0});
    VisitedMemory memory;
    AvsModel model(scenario, &memory);
    for (int node = 0; node < scenario.graph.num_nodes(); ++node) {
        const auto legal = model.legal_actions(AvsState{node, 0});
        std::set<int> legal_set(legal.begin(), legal.end());
        CHECK(legal_set.count(RotateClockwise) == 1);
        CHECK(legal_set.count(RotateCounterClockwise) == 1);
        CHECK(legal_set.count(MoveForward) ==
              (scenario.graph.neighbor(node, MoveForward) >= 0 ? 1 : 0));
        CHECK(legal_set.count(MoveBackward) ==
              (scenario.graph.neighbor(node, MoveBackward) >= 0 ? 1 : 0));
        CHECK(std::is_sorted(legal.begin(), legal.end()));
    }
}

TEST_CASE("open space allows all four actions, a dead end only rotations") {
    Scenario scenario("pocket", load_map("#####\n#.#o#\n#####\n"), 90, FovParams{45.0, 3.0});
    VisitedMemory memory;
    AvsModel model(scenario, &memory);
    const int boxed = scenario.graph.node_of(Pose{1, 1, 0});
    CHECK(model.legal_actions(AvsState{boxed, 0}) ==
          std::vector<pomcp::ActionId>{RotateClockwise, RotateCounterClockwise});

    Scenario open("open", load_map("...\n.o.\n...\n...\n"), 90, FovParams{45.0, 3.0});
    // middle of the bottom rows, facing east: room ahead and behind
    const int free_node = open.graph.node_of(Pose{1, 2, 0});
    REQUIRE(free_node >= 0);
    AvsModel open_model(open, &memory);
    CHECK(open_model.legal_actions(AvsState{free_node, 0}).size() == 4);
}

TEST_CASE("initial belief is uniform over locations at the start pose") {
    Rng rng(77);
    SUBCASE("k = 1 collapses to identical particles") {
        const auto belief = init_belief(1, 13, 100, rng);
        for (const AvsState& s : belief.particles) {
            CHECK(s.pose == 13);
            CHECK(s.target == 0);
        }
    }
    SUBCASE("k = 4 frequencies within 3-sigma multinomial bounds") {
        const auto belief = init_belief(4, 5, 10000, rng);
        int counts[4] = {0, 0, 0, 0};
        for (const AvsState& s : belief.particles) {
            CHECK(s.pose == 5);
            counts[s.target] += 1;
        }
        for (int j = 0; j < 4; ++j)
            CHECK(std::abs(counts[j] / 10000.0 - 0.25) < 0.015);
    }
}

TEST_CASE("pp update removes observed locations only on silent frames") {
    EliminationSet pp = EliminationSet::full(10);
    SUBCASE("set difference on a no-detection frame") {
        const std::vector<int> fov{2, 3};
        const EliminationSet next = update_pp(pp, fov, std::nullopt);
        CHECK(next.locations == std::vector<int>{0, 1, 4, 5, 6, 7, 8, 9});
    }
    SUBCASE("empty FOV leaves pp unchanged") {
        const EliminationSet next = update_pp(pp, {}, std::nullopt);
        CHECK(next.locations == pp.locations);
    }
    SUBCASE("a detection removes nothing") {
        const std::vector<int> fov{2, 3};
        const EliminationSet next = update_pp(pp, fov, Detection{2, 0.95});
        CHECK(next.locations == pp.locations);
    }
    SUBCASE("a scripted tour covering the first six locations leaves the tail") {
        const std::vector<std::vector<int>> tour{{0, 1}, {1, 2}, {3}, {4, 5, 0}, {5}};
        EliminationSet current = pp;
        for (const auto& fov : tour)
            current = update_pp(current, fov, std::nullopt);
        CHECK(current.locations == std::vector<int>{6, 7, 8, 9});
    }
}

TEST_CASE("belief-by-exploration resample is uniform over pp at the current pose") {
    Rng rng(99);
    SUBCASE("singleton pp pins every particle") {
        EliminationSet pp;
        pp.locations = {6};
        const auto belief = resample_belief_be(pp, 4, 500, rng);
        for (const AvsState& s : belief.particles) {
            CHECK(s.pose == 4);
            CHECK(s.target == 6);
        }
    }
    SUBCASE("two-location pp splits evenly") {
        EliminationSet pp;
        pp.locations = {0, 1};
        const auto belief = resample_belief_be(pp, 2, 10000, rng);
        int zero = 0;
        for (const AvsState& s : belief.particles)
            zero += s.target == 0;
        CHECK(std::abs(zero / 10000.0 - 0.5) < 0.015);
    }
    SUBCASE("empty pp is an error") {
        CHECK_THROWS_AS(resample_belief_be(EliminationSet{}, 0, 10, rng),
                        EmptyEliminationSet);
    }
}

TEST_CASE("exit fires on the first step when the target is visible everywhere") {
    // Ring of empty cells around a single candidate; full-circle FOV makes the
    // target visible from every pose, so the first detection concentrates the
    // posterior at the only location and tau (clamped to 0.99) is reached.
    Scenario scenario("ring", load_map("...\n.o.\n...\n"), 90, FovParams{180.0, 3.0});
    scenario.targets.push_back({"t", 0, DetectorStats{1.0, 1.0, 0.0, 0.9, 1.0}, 1.0});
    scenario.exit.c = 1;
    pomcp::Config config;
    config.num_simulations = 64;
    config.num_particles = 64;
    const int start = scenario.graph.node_of(Pose{0, 0, 0});
    SearchAgent agent(scenario, scenario.targets[0], 0, PlannerVariant::PompBePd, config, start,
                      123);
    const auto out = agent.step();
    CHECK(out.exit_fired);
    CHECK(out.exit_location == 0);
    CHECK(agent.posterior().p[0] == doctest::Approx(1.0));
    CHECK(agent.steps() == 1);
}

TEST_CASE("a scripted false positive stops POMP but not the probabilistic exit") {
    // Left room holds a 2x2 candidate block, a wall hides eight more
    // locations; tau = 6/12 = 0.5 while the one-frame Gaussian peak is 0.39.
    const char* text = "oo...#......\noo...#..oooo\n.....#..oooo\n";
    auto make_scenario = [&] {
        Scenario scenario("fp", load_map(text), 90, FovParams{180.0, 6.0});
        scenario.targets.push_back({"t", 11, DetectorStats{0.8, 0.8, 0.05, 0.9, 1.0}, 1.0});
        scenario.exit.c = 6;
        return scenario;
    };
    const auto scripted = [](int step_index, std::span<const int>, int,
                             Rng&) -> std::optional<Detection> {
        if (step_index == 0)
            return Detection{0, 0.95}; // false positive in the left block
        return std::nullopt;
    };
    pomcp::Config config;
    config.num_simulations = 32;
    config.num_particles = 64;

    Scenario pomp_scenario = make_scenario();
    const int start = pomp_scenario.graph.node_of(Pose{3, 1, 180});
    REQUIRE(start >= 0);
    SearchAgent pomp(pomp_scenario, pomp_scenario.targets[0], 11, PlannerVariant::Pomp, config,
                     start, 7);
    pomp.set_detector(scripted);
    const auto pomp_out = pomp.step();
    CHECK(pomp_out.exit_fired);
    CHECK(pomp_out.exit_location == 0);

    Scenario pd_scenario = make_scenario();
    SearchAgent pd(pd_scenario, pd_scenario.targets[0], 11, PlannerVariant::PompPd, config, start,
                   7);
    pd.set_detector(scripted);
    const auto pd_out = pd.step();
    CHECK(!pd_out.exit_fired);
    double peak = 0.0;
    for (double v : pd.posterior().p)
        peak = std::max(peak, v);
    CHECK(peak < 0.5);
    CHECK(peak == doctest::Approx(1.0 / (1.0 + 2.0 * std::exp(-0.5) + std::exp(-1.0)))
                      .epsilon(1e-6));
    for (int i = 0; i < 4; ++i)
        CHECK(!pd.step().exit_fired);
}

TEST_CASE("belief support stays within pp under the BE variant") {
    Scenario scenario("room", load_map("o.....\n.#..#.\n..o...\n....o.\n.#..#.\no.....\n"), 90,
                      FovParams{60.0, 4.0});
    // perfect detector keeps the true location in pp for the whole episode
    scenario.targets.push_back({"t", 3, DetectorStats{1.0, 1.0, 0.0, 0.9, 1.0}, 1.0});
    pomcp::Config config;
    config.num_simulations = 48;
    config.num_particles = 128;
    const int start = scenario.graph.node_of(Pose{3, 1, 90});
    REQUIRE(start >= 0);
    SearchAgent agent(scenario, scenario.targets[0], 3, PlannerVariant::PompBe, config, start, 42);
    for (int step = 0; step < 12; ++step) {
        const auto out = agent.step();
        for (const AvsState& particle : agent.belief().particles) {
            CHECK(agent.pp().contains(particle.target));
            CHECK(particle.pose == agent.current_pose());
        }
        if (out.exit_fired)
            break;
    }
}

TEST_CASE("advanced belief particles are consistent with a silent observation") {
    Scenario scenario("room", load_map("o.....\n.#..#.\n..o...\n......\n.#..#.\no....o\n"), 90,
                      FovParams{60.0, 4.0});
    scenario.targets.push_back({"t", 1, DetectorStats{1.0, 1.0, 0.0, 0.9, 1.0}, 1.0});
    pomcp::Config config;
    config.num_simulations = 128;
    config.num_particles = 128;
    const int start = scenario.graph.node_of(Pose{3, 3, 0});
    REQUIRE(start >= 0);
    SearchAgent agent(scenario, scenario.targets[0], 1, PlannerVariant::Pomp, config, start, 17);
    for (int step = 0; step < 10; ++step) {
        const auto out = agent.step();
        if (out.exit_fired)
            break;
        // silent frame: no particle may place the target inside the FOV
        for (const AvsState& particle : agent.belief().particles)
            CHECK(!scenario.visibility.sees(agent.current_pose(), particle.target));
    }
}

TEST_CASE("pp shrinks monotonically and never drops the target under a perfect detector") {
    Scenario scenario("room", load_map("o.....\n.#..#.\n..o...\n......\n.#..#.\no....o\n"), 90,
                      FovParams{60.0, 4.0});
    scenario.targets.push_back({"t", 2, DetectorStats{1.0, 1.0, 0.0, 0.9, 1.0}, 1.0});
    pomcp::Config config;
    config.num_simulations = 48;
    config.num_particles = 64;
    const int start = scenario.graph.node_of(Pose{2, 3, 90});
    REQUIRE(start >= 0);
    SearchAgent agent(scenario, scenario.targets[0], 2, PlannerVariant::PompBePd, config, start,
                      5);
    int last_size = agent.pp().size();
    for (int step = 0; step < 15; ++step) {
        const auto out = agent.step();
        CHECK(agent.pp().size() <= last_size);
        last_size = agent.pp().size();
        CHECK(agent.pp().contains(2));
        if (out.exit_fired)
            break;
    }
}
