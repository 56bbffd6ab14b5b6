#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "avs/episode.hpp"

namespace avs {

struct MetricsReport {
    int n = 0;
    double sr = 0.0;
    std::optional<double> apl; // absent when there are no successful episodes
    double spl = 0.0;
    int fail_localisation = 0;
    int fail_docking = 0;
    int fail_other = 0;
};

// SR = successes / N; APL = mean steps over successful episodes; SPL = mean
// of S_i * l_i / max(p_i, l_i).
MetricsReport compute_metrics(std::span<const EpisodeResult> results);

// CSV columns: scenario,variant,target,seed,success,steps,shortest,spl_term,
// failure_class,exit_step,docking_steps.
std::string results_csv_header();
std::string result_csv_row(const EpisodeResult& r);
void write_results_csv(const std::string& path, std::span<const EpisodeResult> rows);
std::vector<EpisodeResult> read_results_csv(const std::string& path);

} // namespace avs
