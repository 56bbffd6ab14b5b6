// Command-line front end for the search benchmark, built on the C API only.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "avs_capi.h"

namespace {

int fail(int code) {
    std::fprintf(stderr, "error: %s", avs_strerror(code));
    const char* detail = avs_last_error_message();
    if (detail && detail[0])
        std::fprintf(stderr, " (%s)", detail);
    std::fprintf(stderr, "\n");
    return code;
}

bool parse_seed_range(const std::string& text, long long& from, long long& to) {
    const auto sep = text.find("..");
    if (sep == std::string::npos)
        return false;
    try {
        from = std::stoll(text.substr(0, sep));
        to = std::stoll(text.substr(sep + 2));
    } catch (...) {
        return false;
    }
    return from >= 0 && to >= from;
}

int cmd_run(const std::string& config, const std::string& out_dir, const std::string& variant,
            const std::string& seeds, int jobs, bool sequential, bool heatmaps) {
    avs_run_options_t options;
    avs_run_options_init(&options);
    if (!variant.empty())
        options.variant = variant.c_str();
    if (!seeds.empty() && !parse_seed_range(seeds, options.seed_from, options.seed_to)) {
        std::fprintf(stderr, "error: --seeds expects a..b with a <= b\n");
        return AVS_ERR_INVALID_ARGUMENT;
    }
    options.jobs = jobs;
    options.sequential_planner = sequential ? 1 : 0;
    options.dump_heatmaps = heatmaps ? 1 : 0;

    avs_suite_t* suite = nullptr;
    int rc = avs_suite_load(config.c_str(), &suite);
    if (rc != AVS_OK)
        return fail(rc);

    avs_report_t* report = nullptr;
    rc = avs_suite_run(suite, out_dir.c_str(), &options, &report);
    avs_suite_free(suite);
    if (rc != AVS_OK)
        return fail(rc);

    char* summary = nullptr;
    rc = avs_report_summary_json(report, &summary);
    if (rc == AVS_OK) {
        std::printf("%s\n", summary);
        avs_string_free(summary);
    }
    int rows = 0;
    avs_report_row_count(report, &rows);
    std::fprintf(stderr, "wrote %d episode rows to %s\n", rows, out_dir.c_str());
    avs_report_free(report);
    return rc == AVS_OK ? 0 : fail(rc);
}

int cmd_genmap(const std::string& preset, unsigned long long seed, const std::string& out_path,
               int width, int height, int rooms, double density) {
    avs_map_t* map = nullptr;
    int rc;
    if (!preset.empty())
        rc = avs_map_generate_preset(preset.c_str(), seed, &map);
    else
        rc = avs_map_generate(width, height, rooms, density, seed, &map);
    if (rc != AVS_OK)
        return fail(rc);

    char* text = nullptr;
    rc = avs_map_to_text(map, &text);
    if (rc != AVS_OK) {
        avs_map_free(map);
        return fail(rc);
    }
    if (out_path.empty() || out_path == "-") {
        std::fputs(text, stdout);
    } else {
        std::FILE* f = std::fopen(out_path.c_str(), "w");
        if (!f) {
            std::fprintf(stderr, "error: cannot write %s\n", out_path.c_str());
            avs_string_free(text);
            avs_map_free(map);
            return AVS_ERR_IO;
        }
        std::fputs(text, f);
        std::fclose(f);
        int w = 0, h = 0, k = 0;
        avs_map_size(map, &w, &h, &k);
        std::fprintf(stderr, "wrote %dx%d map with %d candidate locations to %s\n", w, h, k,
                     out_path.c_str());
    }
    avs_string_free(text);
    avs_map_free(map);
    return 0;
}

int cmd_metrics(const std::string& csv_path) {
    char* json = nullptr;
    const int rc = avs_metrics_from_csv(csv_path.c_str(), &json);
    if (rc != AVS_OK)
        return fail(rc);
    std::printf("%s\n", json);
    avs_string_free(json);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Active visual search planning benchmark"};
    app.require_subcommand(1);

    std::string config, out_dir = "avs-out", variant, seeds;
    int jobs = 1;
    bool sequential = false, heatmaps = false;
    CLI::App* run = app.add_subcommand("run", "Run the episode grid from a config file");
    run->add_option("--config", config, "Suite config (JSON)")->required();
    run->add_option("--out", out_dir, "Output directory");
    run->add_option("--variant", variant, "Planner variant override "
                                          "(pomp|pomp-be|pomp-pd|pomp-be-pd)");
    run->add_option("--seeds", seeds, "Seed range a..b (inclusive)");
    run->add_option("--jobs", jobs, "Concurrent episodes")->check(CLI::PositiveNumber);
    run->add_flag("--sequential-planner", sequential,
                  "Force the single-threaded reference solver");
    run->add_flag("--dump-heatmaps", heatmaps, "Write per-step posterior PGM heatmaps");

    std::string preset, map_out;
    unsigned long long seed = 0;
    int width = 16, height = 12, rooms = 1;
    double density = 0.25;
    CLI::App* genmap = app.add_subcommand("genmap", "Generate a synthetic map");
    genmap->add_option("--preset", preset, "easy|medium|hard");
    genmap->add_option("--seed", seed, "Generation seed");
    genmap->add_option("--out", map_out, "Output map file ('-' for stdout)");
    genmap->add_option("--width", width, "Map width (custom generation)");
    genmap->add_option("--height", height, "Map height");
    genmap->add_option("--rooms", rooms, "Room count");
    genmap->add_option("--density", density, "Candidate density in (0, 1)");

    std::string csv;
    CLI::App* metrics = app.add_subcommand("metrics", "Recompute metrics from a results CSV");
    metrics->add_option("--csv", csv, "results.csv path")->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed())
        return cmd_run(config, out_dir, variant, seeds, jobs, sequential, heatmaps);
    if (genmap->parsed())
        return cmd_genmap(preset, seed, map_out, width, height, rooms, density);
    if (metrics->parsed())
        return cmd_metrics(csv);
    return 0;
}
