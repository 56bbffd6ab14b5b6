#include <doctest.h>

#include <cmath>

#include "avs/docking.hpp"
#include "avs/errors.hpp"
#include "avs/scenario.hpp"
#include "oracles.hpp"

using namespace avs;

namespace {

// Brute-force replica of the destination ordering for oracle comparison.
int scan_destination(int target, const PoseGraph& graph, const VisibilityMatrix& vis,
                     const GridMap& map) {
    const auto [tx, ty] = map.candidate_cell(target);
    int best = -1;
    double best_dist = 1e18, best_angle = 1e18;
    for (int i = 0; i < graph.num_nodes(); ++i) {
        if (!vis.sees(i, target))
            continue;
        const Pose& p = graph.pose(i);
        const double dist = std::hypot(double(tx - p.x), double(ty - p.y));
        const double bearing = std::atan2(double(p.y - ty), double(tx - p.x)) * 180.0 /
                               3.14159265358979323846;
        double angle = std::fmod(std::abs(bearing - p.theta), 360.0);
        if (angle > 180.0)
            angle = 360.0 - angle;
        if (dist < best_dist - 1e-9 ||
            (dist < best_dist + 1e-9 && angle < best_angle - 1e-9)) {
            best = i;
            best_dist = dist;
            best_angle = angle;
        }
    }
    return best;
}

} // namespace

TEST_CASE("destination is the unique pose that sees a boxed-in target") {
    Scenario scenario("box", load_map("#o#\n#.#\n#.#\n###\n"), 90, FovParams{45.0, 1.0});
    const int dst = destination_pose(0, scenario.graph, scenario.visibility, scenario.map);
    CHECK(scenario.graph.pose(dst) == Pose{1, 1, 90});
}

TEST_CASE("equidistant facing poses break ties by node ordinal") {
    Scenario scenario("pair", load_map(".o.\n"), 90, FovParams{45.0, 2.0});
    const int dst = destination_pose(0, scenario.graph, scenario.visibility, scenario.map);
    const int west = scenario.graph.node_of(Pose{0, 0, 0});
    const int east = scenario.graph.node_of(Pose{2, 0, 180});
    REQUIRE(scenario.visibility.sees(west, 0));
    REQUIRE(scenario.visibility.sees(east, 0));
    CHECK(dst == std::min(west, east));
}

TEST_CASE("destination matches a brute-force scan on an 8x8 fixture") {
    Scenario scenario("fix", load_map("........\n.#.o..#.\n...#....\n.o....o.\n"
                                      "....#...\n.#....#.\n..o.....\n........\n"),
                      90, FovParams{45.0, 4.0});
    for (int j = 0; j < scenario.map.num_candidates(); ++j) {
        CHECK(destination_pose(j, scenario.graph, scenario.visibility, scenario.map) ==
              scan_destination(j, scenario.graph, scenario.visibility, scenario.map));
    }
}

TEST_CASE("unobservable target is an error") {
    Scenario scenario("hidden", load_map("o#.#o\n"), 90, FovParams{45.0, 5.0});
    CHECK_THROWS_AS(destination_pose(0, scenario.graph, scenario.visibility, scenario.map),
                    UnobservableTarget);
}

TEST_CASE("same source and destination give an empty plan") {
    Scenario scenario("spot", load_map(".o\n"), 90, FovParams{45.0, 2.0});
    const int node = scenario.graph.node_of(Pose{0, 0, 90});
    const DockingPlan plan = shortest_path(scenario.graph, node, node);
    CHECK(plan.length() == 0);
    CHECK(plan.destination == node);
}

TEST_CASE("plan length equals BFS distance across a 6x6 fixture") {
    Scenario scenario("six", load_map("......\n.##.#.\n...o..\n.#....\n.#.##.\n......\n"), 90,
                      FovParams{45.0, 3.0});
    const PoseGraph& graph = scenario.graph;
    for (int src = 0; src < graph.num_nodes(); src += 7) {
        const std::vector<int> oracle_dist = oracle::bfs_distances(graph, src);
        for (int dst = 0; dst < graph.num_nodes(); dst += 5) {
            REQUIRE(oracle_dist[dst] >= 0);
            const DockingPlan plan = shortest_path(graph, src, dst);
            CHECK(plan.length() == oracle_dist[dst]);
            // path validity: edges exist and land on the destination
            int cur = src;
            for (const auto& [action, node] : plan.path) {
                CHECK(graph.neighbor(cur, action) == node);
                cur = node;
            }
            CHECK(cur == dst);
        }
    }
}

TEST_CASE("walled-off destinations are unreachable") {
    Scenario scenario("walls", load_map("..#o#.\n..#.#.\n######\n"), 90, FovParams{45.0, 3.0});
    const int src = scenario.graph.node_of(Pose{0, 0, 0});
    const int boxed = scenario.graph.node_of(Pose{3, 1, 0});
    REQUIRE(src >= 0);
    REQUIRE(boxed >= 0);
    CHECK_THROWS_AS(shortest_path(scenario.graph, src, boxed), Unreachable);
}

TEST_CASE("equal-length paths resolve to the lexicographically smallest actions") {
    Scenario scenario("turn", load_map(".o\n"), 90, FovParams{45.0, 2.0});
    const int src = scenario.graph.node_of(Pose{0, 0, 0});
    const int dst = scenario.graph.node_of(Pose{0, 0, 180});
    const DockingPlan plan = shortest_path(scenario.graph, src, dst);
    REQUIRE(plan.length() == 2);
    CHECK(plan.path[0].first == RotateClockwise);
    CHECK(plan.path[1].first == RotateClockwise);
}

TEST_CASE("identical inputs produce identical plans") {
    Scenario scenario("six", load_map("......\n.##.#.\n...o..\n.#....\n.#.##.\n......\n"), 90,
                      FovParams{45.0, 3.0});
    const int src = scenario.graph.node_of(Pose{0, 0, 0});
    const int dst = scenario.graph.node_of(Pose{5, 5, 270});
    const DockingPlan a = shortest_path(scenario.graph, src, dst);
    const DockingPlan b = shortest_path(scenario.graph, src, dst);
    REQUIRE(a.length() == b.length());
    CHECK(a.path == b.path);
}

TEST_CASE("weight hook is honoured") {
    // Make rotations free: a turn-heavy route costs the same as its
    // translation count.
    Scenario scenario("free", load_map("..\n.o\n"), 90, FovParams{45.0, 2.0});
    const auto weight = [](Action a) {
        return (a == RotateClockwise || a == RotateCounterClockwise) ? 0.0 : 1.0;
    };
    const int src = scenario.graph.node_of(Pose{0, 0, 0});
    const int dst = scenario.graph.node_of(Pose{0, 1, 90});
    const std::vector<double> dist = dijkstra_to(scenario.graph, dst, weight);
    CHECK(dist[src] == doctest::Approx(1.0)); // one translation, rotations free
}
