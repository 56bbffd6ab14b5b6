#include "avs/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "avs/errors.hpp"
#include "avs/mapgen.hpp"

namespace avs {
namespace {

using nlohmann::json;

GridMap resolve_map(const json& spec, const std::string& base_dir) {
    if (spec.contains("path")) {
        std::filesystem::path p = spec.at("path").get<std::string>();
        if (p.is_relative() && !base_dir.empty())
            p = std::filesystem::path(base_dir) / p;
        return load_map_file(p.string());
    }
    if (spec.contains("text"))
        return load_map(spec.at("text").get<std::string>());
    if (spec.contains("generate")) {
        const json& g = spec.at("generate");
        MapGenParams params;
        if (g.contains("preset"))
            params = preset_params(g.at("preset").get<std::string>());
        params.width = g.value("width", params.width);
        params.height = g.value("height", params.height);
        params.room_count = g.value("rooms", params.room_count);
        params.candidate_density = g.value("candidate_density", params.candidate_density);
        const std::uint64_t seed = g.value("seed", 0ULL);
        return generate_map(params, seed);
    }
    throw ConfigError("scenario map needs one of: path, text, generate");
}

DetectorStats parse_detector(const json& d) {
    DetectorStats stats;
    stats.precision = d.value("precision", 1.0);
    stats.recall = d.value("recall", 1.0);
    stats.fp_rate = d.value("fp_rate", 0.0);
    if (d.contains("score_range")) {
        const auto& r = d.at("score_range");
        stats.score_lo = r.at(0).get<double>();
        stats.score_hi = r.at(1).get<double>();
    }
    for (double v : {stats.precision, stats.recall, stats.fp_rate})
        if (v < 0.0 || v > 1.0)
            throw ConfigError("detector rates must lie in [0, 1]");
    if (stats.score_hi <= kScoreThreshold)
        throw ConfigError("detector score range must extend above the 0.9 threshold");
    return stats;
}

Scenario parse_scenario(const json& s, const std::string& base_dir) {
    const std::string name = s.at("name").get<std::string>();
    const int delta_theta = s.value("delta_theta", 90);

    FovParams fov;
    if (s.contains("fov")) {
        fov.half_angle_deg = s.at("fov").value("half_angle_deg", fov.half_angle_deg);
        fov.max_range = s.at("fov").value("max_range", fov.max_range);
    }
    if (!(fov.half_angle_deg > 0.0 && fov.half_angle_deg <= 180.0))
        throw ConfigError("fov half angle must lie in (0, 180]");
    if (fov.max_range < 1.0)
        throw ConfigError("fov range must be at least one cell");

    Scenario scenario(name, resolve_map(s.at("map"), base_dir), delta_theta, fov);

    if (s.contains("rewards")) {
        const json& r = s.at("rewards");
        scenario.rewards.found = r.value("found", scenario.rewards.found);
        scenario.rewards.step = r.value("step", scenario.rewards.step);
        scenario.rewards.revisit = r.value("revisit", scenario.rewards.revisit);
    }
    if (!(scenario.rewards.found > 0.0 && scenario.rewards.step < 0.0 &&
          scenario.rewards.revisit < scenario.rewards.step))
        throw ConfigError("rewards must satisfy found > 0 > step > revisit");

    scenario.episode_cap = s.value("episode_cap", 200);
    if (scenario.episode_cap < 1)
        throw ConfigError("episode cap must be at least 1");

    if (s.contains("exit"))
        scenario.exit.c = s.at("exit").value("c", scenario.exit.c);
    if (scenario.exit.c < 1)
        throw ConfigError("exit constant c must be a positive integer");

    scenario.d_goal = s.value("d_goal", 2.0);

    const std::string conv = s.value("likelihood_convention", std::string("figure"));
    if (conv == "figure")
        scenario.likelihood_convention = LikelihoodConvention::Figure;
    else if (conv == "text")
        scenario.likelihood_convention = LikelihoodConvention::Text;
    else
        throw ConfigError("likelihood_convention must be 'figure' or 'text'");

    if (s.contains("start_pose") && s.at("start_pose").is_array()) {
        const auto& p = s.at("start_pose");
        Pose pose{p.at(0).get<int>(), p.at(1).get<int>(), p.at(2).get<int>()};
        if (scenario.graph.node_of(pose) < 0)
            throw ConfigError("start pose is not a node of the pose graph");
        scenario.start_pose = pose;
    }

    if (!s.contains("targets") || s.at("targets").empty())
        throw ConfigError("scenario '" + name + "' declares no targets");
    for (const json& t : s.at("targets")) {
        TargetSpec target;
        target.id = t.at("id").get<std::string>();
        if (t.contains("location") && t.at("location").is_number_integer()) {
            target.location = t.at("location").get<int>();
            if (target.location < 0 || target.location >= scenario.num_locations())
                throw ConfigError("target location out of range in scenario '" + name + "'");
        }
        if (t.contains("detector"))
            target.detector = parse_detector(t.at("detector"));
        target.sigma = t.value("sigma", 1.0);
        if (target.sigma <= 0.0)
            throw ConfigError("sigma must be positive");
        scenario.targets.push_back(std::move(target));
    }
    return scenario;
}

} // namespace

SuiteConfig parse_suite_config(const std::string& json_text, const std::string& base_dir) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }

    try {
        SuiteConfig config;
        if (root.contains("pomcp")) {
            const json& p = root.at("pomcp");
            config.pomcp.gamma = p.value("gamma", config.pomcp.gamma);
            config.pomcp.num_simulations = p.value("simulations", config.pomcp.num_simulations);
            config.pomcp.uct_c = p.value("uct_c", config.pomcp.uct_c);
            config.pomcp.max_tree_depth = p.value("max_tree_depth", config.pomcp.max_tree_depth);
            config.pomcp.rollout_depth = p.value("rollout_depth", config.pomcp.rollout_depth);
            config.pomcp.num_particles = p.value("particles", config.pomcp.num_particles);
            config.pomcp.num_threads = p.value("threads", config.pomcp.num_threads);
        }
        if (!(config.pomcp.gamma >= 0.0 && config.pomcp.gamma < 1.0))
            throw ConfigError("pomcp.gamma must lie in [0, 1)");
        if (config.pomcp.num_simulations < 1 || config.pomcp.num_particles < 1 ||
            config.pomcp.num_threads < 1)
            throw ConfigError("pomcp counts must be positive");

        if (root.contains("protocol")) {
            const json& proto = root.at("protocol");
            if (proto.contains("variants"))
                for (const json& v : proto.at("variants"))
                    config.variants.push_back(parse_variant(v.get<std::string>()));
            if (proto.contains("seeds")) {
                const json& seeds = proto.at("seeds");
                if (seeds.is_array()) {
                    for (const json& v : seeds)
                        config.seeds.push_back(v.get<std::uint64_t>());
                } else {
                    const std::uint64_t from = seeds.value("from", 0ULL);
                    const std::uint64_t count = seeds.value("count", 10ULL);
                    for (std::uint64_t i = 0; i < count; ++i)
                        config.seeds.push_back(from + i);
                }
            }
        }
        if (config.variants.empty())
            config.variants.push_back(PlannerVariant::PompBePd);
        if (config.seeds.empty())
            for (std::uint64_t i = 0; i < 10; ++i)
                config.seeds.push_back(i);

        if (root.contains("scenarios"))
            for (const json& s : root.at("scenarios"))
                config.scenarios.push_back(parse_scenario(s, base_dir));
        return config;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
}

SuiteConfig load_suite_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_suite_config(buf.str(), std::filesystem::path(path).parent_path().string());
}

} // namespace avs
