#include "avs/detection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "avs/errors.hpp"

namespace avs {

ProbabilityField ProbabilityField::uniform(int k) {
    ProbabilityField f;
    f.p.assign(k, 1.0 / k);
    return f;
}

double ProbabilityField::sum() const {
    return std::accumulate(p.begin(), p.end(), 0.0);
}

double ExitThreshold::tau(int k) const {
    return std::min(static_cast<double>(c) / k, 0.99);
}

double f1_score(double precision, double recall) {
    const double s = precision + recall;
    return s > 0.0 ? 2.0 * precision * recall / s : 0.0;
}

std::optional<Detection> simulate_detection(std::span<const int> fov_set, int true_location,
                                            const DetectorStats& stats, Rng& rng) {
    const bool target_visible =
        std::find(fov_set.begin(), fov_set.end(), true_location) != fov_set.end();

    // Scores are conditioned on passing the threshold so the configured rates
    // are the surfaced rates.
    const auto sample_score = [&] {
        const double lo = std::max(stats.score_lo, kScoreThreshold);
        const double hi = std::max(stats.score_hi, lo);
        return rng.uniform(lo, hi);
    };

    if (target_visible && rng.bernoulli(stats.recall))
        return Detection{true_location, sample_score()};

    if (!fov_set.empty() && rng.bernoulli(stats.fp_rate)) {
        const int loc = fov_set[rng.uniform_index(fov_set.size())];
        return Detection{loc, sample_score()};
    }
    return std::nullopt;
}

LikelihoodField step_likelihood(const GridMap& map, std::span<const int> fov_set,
                                const std::optional<Detection>& detection,
                                const DetectorStats& stats, double sigma,
                                LikelihoodConvention convention) {
    const int k = map.num_candidates();
    if (k == 0)
        throw AllZeroField("map has no candidate locations");

    std::vector<std::uint8_t> inside(k, 0);
    for (int j : fov_set)
        inside[j] = 1;

    LikelihoodField field;
    field.d.assign(k, 0.0);

    if (detection) {
        const auto [mx, my] = map.candidate_cell(detection->location);
        const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
        for (int j : fov_set) {
            const auto [cx, cy] = map.candidate_cell(j);
            const double dx = cx - mx, dy = cy - my;
            field.d[j] = std::exp(-(dx * dx + dy * dy) * inv2s2);
        }
    } else {
        const double f1 = stats.f1();
        const double in_w = convention == LikelihoodConvention::Figure ? 1.0 - f1 : f1;
        const double out_w = convention == LikelihoodConvention::Figure ? f1 : 1.0 - f1;
        for (int j = 0; j < k; ++j)
            field.d[j] = inside[j] ? in_w : out_w;
    }

    const double total = std::accumulate(field.d.begin(), field.d.end(), 0.0);
    if (total <= 0.0)
        throw AllZeroField("likelihood field normalizes to zero");
    for (double& v : field.d)
        v /= total;
    return field;
}

ProbabilityField update_posterior(const ProbabilityField& prior,
                                  const LikelihoodField& likelihood) {
    ProbabilityField post;
    post.p.resize(prior.p.size());
    double total = 0.0;
    for (std::size_t j = 0; j < prior.p.size(); ++j) {
        post.p[j] = prior.p[j] * likelihood.d[j];
        total += post.p[j];
    }
    if (total <= 0.0)
        throw DegeneratePosterior("prior and likelihood have disjoint support");
    for (double& v : post.p)
        v /= total;
    return post;
}

std::optional<int> check_exit(const ProbabilityField& field,
                              std::span<const std::uint8_t> visibility_row, double tau) {
    std::optional<int> best;
    for (std::size_t j = 0; j < field.p.size(); ++j) {
        if (!visibility_row[j] || field.p[j] < tau)
            continue;
        if (!best || field.p[j] > field.p[*best])
            best = static_cast<int>(j);
    }
    return best;
}

} // namespace avs
