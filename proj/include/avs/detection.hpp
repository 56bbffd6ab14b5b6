#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "avs/grid_map.hpp"
#include "avs/rng.hpp"

namespace avs {

// Detections scoring at or below this are never surfaced; the simulator
// samples scores conditioned on exceeding it, so the configured recall and
// false-positive rate describe post-threshold behaviour.
inline constexpr double kScoreThreshold = 0.9;

// Post-threshold confusion statistics of the simulated detector.
struct DetectorStats {
    double precision = 1.0;
    double recall = 1.0;
    // Per-frame probability of a false positive at a uniformly random visible
    // location when no true positive is emitted.
    double fp_rate = 0.0;
    // Confidence scores are drawn uniformly from this range (intersected with
    // (kScoreThreshold, 1]).
    double score_lo = 0.9;
    double score_hi = 1.0;

    double f1() const {
        const double s = precision + recall;
        return s > 0.0 ? 2.0 * precision * recall / s : 0.0;
    }
};

struct Detection {
    int location = -1; // candidate index
    double score = 0.0;
};

// Per-step likelihood over the k candidate locations, normalized to sum 1.
struct LikelihoodField {
    std::vector<double> d;
};

// Running posterior over the k candidate locations, normalized to sum 1.
struct ProbabilityField {
    std::vector<double> p;

    static ProbabilityField uniform(int k);
    double sum() const;
};

// Exit threshold tau = c / k, clamped to 0.99.
struct ExitThreshold {
    int c = 10;

    double tau(int k) const;
};

double f1_score(double precision, double recall);

// One detector frame. A true positive at the target fires with probability
// `recall` when the target is visible; otherwise (including missed true
// positives) a false positive at a uniform visible location fires with
// probability `fp_rate`. Returns nullopt when nothing surfaces.
std::optional<Detection> simulate_detection(std::span<const int> fov_set, int true_location,
                                            const DetectorStats& stats, Rng& rng);

// Which assignment the no-detection case uses for in-FOV locations.
enum class LikelihoodConvention {
    Figure, // low inside the FOV (1 - F1), high outside (F1)
    Text,   // the transposed assignment, kept for comparison
};

// Likelihood of one detector frame. With a detection: zero outside the FOV,
// isotropic Gaussian in the candidate-to-detection cell distance inside,
// spread `sigma`. Without: (1-F1) inside / F1 outside under the Figure
// convention. Normalized to sum 1.
LikelihoodField step_likelihood(const GridMap& map, std::span<const int> fov_set,
                                const std::optional<Detection>& detection,
                                const DetectorStats& stats, double sigma,
                                LikelihoodConvention convention = LikelihoodConvention::Figure);

// Exact Bayesian update: elementwise product, renormalized. Throws
// DegeneratePosterior when prior and likelihood have disjoint support.
ProbabilityField update_posterior(const ProbabilityField& prior, const LikelihoodField& likelihood);

// Highest-posterior location that both reaches tau and is visible from the
// current pose; nullopt when no location qualifies.
std::optional<int> check_exit(const ProbabilityField& field,
                              std::span<const std::uint8_t> visibility_row, double tau);

} // namespace avs
