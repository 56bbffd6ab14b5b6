#include "avs_capi.h"

#include <cstring>
#include <string>

#include "avs/errors.hpp"
#include "avs/mapgen.hpp"
#include "avs/metrics.hpp"
#include "avs/scenario.hpp"
#include "avs/suite.hpp"

struct avs_map_t {
    avs::GridMap map;
};

struct avs_suite_t {
    avs::SuiteConfig config;
};

struct avs_report_t {
    avs::SuiteOutcome outcome;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Runs the body, mapping exceptions to status codes.
template <typename Fn>
int guarded(Fn&& body) {
    try {
        g_last_error.clear();
        return body();
    } catch (const avs::ParseError& e) {
        g_last_error = e.what();
        return AVS_ERR_PARSE;
    } catch (const avs::ConfigError& e) {
        g_last_error = e.what();
        return AVS_ERR_CONFIG;
    } catch (const avs::IoError& e) {
        g_last_error = e.what();
        return AVS_ERR_IO;
    } catch (const avs::GenerationFailed& e) {
        g_last_error = e.what();
        return AVS_ERR_GENERATION;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return AVS_ERR_RUNTIME;
    }
}

} // namespace

extern "C" {

const char* avs_strerror(int code) {
    switch (code) {
    case AVS_OK: return "ok";
    case AVS_ERR_PARSE: return "parse error";
    case AVS_ERR_CONFIG: return "invalid configuration";
    case AVS_ERR_IO: return "i/o error";
    case AVS_ERR_GENERATION: return "map generation failed";
    case AVS_ERR_RUNTIME: return "runtime error";
    case AVS_ERR_INVALID_ARGUMENT: return "invalid argument";
    }
    return "unknown error";
}

const char* avs_last_error_message(void) {
    return g_last_error.c_str();
}

void avs_string_free(char* s) {
    delete[] s;
}

int avs_map_load_text(const char* text, avs_map_t** out) {
    if (!text || !out)
        return AVS_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *out = new avs_map_t{avs::load_map(text)};
        return AVS_OK;
    });
}

int avs_map_load_file(const char* path, avs_map_t** out) {
    if (!path || !out)
        return AVS_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *out = new avs_map_t{avs::load_map_file(path)};
        return AVS_OK;
    });
}

int avs_map_generate(int width, int height, int rooms, double candidate_density,
                     unsigned long long seed, avs_map_t** out) {
    if (!out)
        return AVS_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *out = new avs_map_t{avs::generate_map(width, height, rooms, candidate_density, seed)};
        return AVS_OK;
    });
}

int avs_map_generate_preset(const char* preset, unsigned long long seed, avs_map_t** out) {
    if (!preset || !out)
        return AVS_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *out = new avs_map_t{avs::generate_map(avs::preset_params(preset), seed)};
        return AVS_OK;
    });
}

int avs_map_size(const avs_map_t* map, int* width, int* height, int* candidates) {
    if (!map)
        return AVS_ERR_INVALID_ARGUMENT;
    if (width)
        *width = map->map.width();
    if (height)
        *height = map->map.height();
    if (candidates)
        *candidates = map->map.num_candidates();
    return AVS_OK;
}

int avs_map_to_text(const avs_map_t* map, char** text_out) {
    if (!map || !text_out)
        return AVS_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *text_out = dup_string(map->map.to_text());
        return AVS_OK;
    });
}

void avs_map_free(avs_map_t* map) {
    delete map;
}

int avs_suite_load(const char* config_path, avs_suite_t** out) {
    if (!config_path || !out)
        return AVS_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *out = new avs_suite_t{avs::load_suite_config(config_path)};
        return AVS_OK;
    });
}

void avs_suite_free(avs_suite_t* suite) {
    delete suite;
}

void avs_run_options_init(avs_run_options_t* options) {
    if (!options)
        return;
    options->variant = nullptr;
    options->seed_from = -1;
    options->seed_to = -1;
    options->jobs = 1;
    options->sequential_planner = 0;
    options->dump_heatmaps = 0;
}

int avs_suite_run(const avs_suite_t* suite, const char* out_dir,
                  const avs_run_options_t* options, avs_report_t** out) {
    if (!suite || !out)
        return AVS_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        avs::RunOptions run;
        if (options) {
            if (options->variant)
                run.variant = options->variant;
            if (options->seed_from >= 0 && options->seed_to >= options->seed_from)
                run.seed_range = {static_cast<std::uint64_t>(options->seed_from),
                                  static_cast<std::uint64_t>(options->seed_to)};
            run.jobs = options->jobs > 0 ? options->jobs : 1;
            run.sequential_planner = options->sequential_planner != 0;
            run.dump_heatmaps = options->dump_heatmaps != 0;
        }
        *out = new avs_report_t{
            avs::run_suite(suite->config, out_dir ? out_dir : "", run)};
        return AVS_OK;
    });
}

int avs_report_row_count(const avs_report_t* report, int* out) {
    if (!report || !out)
        return AVS_ERR_INVALID_ARGUMENT;
    *out = static_cast<int>(report->outcome.rows.size());
    return AVS_OK;
}

int avs_report_summary_json(const avs_report_t* report, char** json_out) {
    if (!report || !json_out)
        return AVS_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *json_out = dup_string(avs::summary_json(report->outcome.groups));
        return AVS_OK;
    });
}

void avs_report_free(avs_report_t* report) {
    delete report;
}

int avs_metrics_from_csv(const char* csv_path, char** json_out) {
    if (!csv_path || !json_out)
        return AVS_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const auto rows = avs::read_results_csv(csv_path);
        *json_out = dup_string(avs::summary_json(avs::group_metrics(rows)));
        return AVS_OK;
    });
}

} // extern "C"
