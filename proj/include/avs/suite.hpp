#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "avs/metrics.hpp"
#include "avs/scenario.hpp"

namespace avs {

struct RunOptions {
    std::optional<std::string> variant;                                // overrides the config
    std::optional<std::pair<std::uint64_t, std::uint64_t>> seed_range; // inclusive, overrides
    int jobs = 1;
    bool sequential_planner = false; // force the single-threaded reference solver
    bool dump_heatmaps = false;
};

struct GroupMetrics {
    std::string scenario;
    std::string variant;
    MetricsReport metrics;
};

struct SuiteOutcome {
    std::vector<EpisodeResult> rows; // sorted by (scenario, variant, target, seed)
    std::vector<GroupMetrics> groups;
};

// Runs the (scenario x variant x target x seed) episode grid. Episodes run
// concurrently when jobs > 1; the output is independent of the job count.
// Writes results.csv, metrics.json and optional per-step posterior heatmaps
// under out_dir (pass an empty string to skip the files).
SuiteOutcome run_suite(const SuiteConfig& config, const std::string& out_dir,
                       const RunOptions& options = {});

std::vector<GroupMetrics> group_metrics(std::span<const EpisodeResult> rows);
std::string summary_json(std::span<const GroupMetrics> groups);

// Plain (P2) PGM at map resolution: round(65535 * p_j) on candidate cells,
// zero elsewhere.
void write_heatmap_pgm(const std::string& path, const GridMap& map,
                       const ProbabilityField& posterior);

} // namespace avs
