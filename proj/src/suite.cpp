#include "avs/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "avs/errors.hpp"

namespace avs {
namespace {

namespace fs = std::filesystem;

struct EpisodeTask {
    const Scenario* scenario;
    std::size_t target_index;
    PlannerVariant variant;
    std::uint64_t seed;
};

} // namespace

std::vector<GroupMetrics> group_metrics(std::span<const EpisodeResult> rows) {
    std::vector<GroupMetrics> groups;
    std::vector<std::pair<std::string, std::string>> keys;
    for (const EpisodeResult& r : rows) {
        const auto key = std::make_pair(r.scenario, r.variant);
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            keys.push_back(key);
    }
    std::sort(keys.begin(), keys.end());
    for (const auto& [scenario, variant] : keys) {
        std::vector<EpisodeResult> subset;
        for (const EpisodeResult& r : rows)
            if (r.scenario == scenario && r.variant == variant)
                subset.push_back(r);
        groups.push_back({scenario, variant, compute_metrics(subset)});
    }
    return groups;
}

std::string summary_json(std::span<const GroupMetrics> groups) {
    nlohmann::json out = nlohmann::json::array();
    for (const GroupMetrics& g : groups) {
        nlohmann::json entry{
            {"scenario", g.scenario},
            {"variant", g.variant},
            {"episodes", g.metrics.n},
            {"sr", g.metrics.sr},
            {"spl", g.metrics.spl},
            {"failures",
             {{"localisation", g.metrics.fail_localisation},
              {"docking", g.metrics.fail_docking},
              {"other", g.metrics.fail_other}}},
        };
        if (g.metrics.apl)
            entry["apl"] = *g.metrics.apl;
        else
            entry["apl"] = nullptr;
        out.push_back(std::move(entry));
    }
    return out.dump(2);
}

void write_heatmap_pgm(const std::string& path, const GridMap& map,
                       const ProbabilityField& posterior) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write heatmap: " + path);
    out << "P2\n" << map.width() << ' ' << map.height() << "\n65535\n";
    for (int y = 0; y < map.height(); ++y) {
        for (int x = 0; x < map.width(); ++x) {
            const int j = map.candidate_at(x, y);
            const long value =
                j >= 0 ? std::lround(65535.0 * posterior.p[j]) : 0L;
            out << value << (x + 1 < map.width() ? ' ' : '\n');
        }
    }
}

SuiteOutcome run_suite(const SuiteConfig& config, const std::string& out_dir,
                       const RunOptions& options) {
    std::vector<PlannerVariant> variants = config.variants;
    if (options.variant)
        variants = {parse_variant(*options.variant)};

    std::vector<std::uint64_t> seeds = config.seeds;
    if (options.seed_range) {
        seeds.clear();
        for (std::uint64_t s = options.seed_range->first; s <= options.seed_range->second; ++s)
            seeds.push_back(s);
    }

    pomcp::Config planner_config = config.pomcp;
    if (options.sequential_planner)
        planner_config.num_threads = 1;

    std::vector<EpisodeTask> tasks;
    for (const Scenario& scenario : config.scenarios)
        for (PlannerVariant variant : variants)
            for (std::size_t t = 0; t < scenario.targets.size(); ++t)
                for (std::uint64_t seed : seeds)
                    tasks.push_back({&scenario, t, variant, seed});

    const bool heatmaps = options.dump_heatmaps && !out_dir.empty();
    if (!out_dir.empty())
        fs::create_directories(out_dir);

    std::vector<EpisodeResult> rows(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size())
                return;
            const EpisodeTask& task = tasks[i];
            const std::string& target_id = task.scenario->targets[task.target_index].id;
            HeatmapSink sink;
            if (heatmaps) {
                fs::path dir = fs::path(out_dir) / "heatmaps" / task.scenario->name /
                               variant_name(task.variant) / target_id /
                               std::to_string(task.seed);
                fs::create_directories(dir);
                const GridMap* map = &task.scenario->map;
                sink = [dir, map](int step, const ProbabilityField& posterior) {
                    std::ostringstream name;
                    name << "step_" << std::setw(3) << std::setfill('0') << step << ".pgm";
                    write_heatmap_pgm((dir / name.str()).string(), *map, posterior);
                };
            }

            rows[i] = run_episode(*task.scenario, task.target_index, task.variant,
                                  planner_config, task.seed, sink);
        }
    };

    const int jobs = std::max(1, options.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }

    std::sort(rows.begin(), rows.end(), [](const EpisodeResult& a, const EpisodeResult& b) {
        return std::tie(a.scenario, a.variant, a.target, a.seed) <
               std::tie(b.scenario, b.variant, b.target, b.seed);
    });

    SuiteOutcome outcome;
    outcome.rows = std::move(rows);
    outcome.groups = group_metrics(outcome.rows);

    if (!out_dir.empty()) {
        write_results_csv((fs::path(out_dir) / "results.csv").string(), outcome.rows);
        std::ofstream mout(fs::path(out_dir) / "metrics.json");
        if (!mout)
            throw IoError("cannot write metrics.json under " + out_dir);
        mout << summary_json(outcome.groups) << '\n';
    }
    return outcome;
}

} // namespace avs
