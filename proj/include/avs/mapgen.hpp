#pragma once

#include <cstdint>
#include <string>

#include "avs/grid_map.hpp"

namespace avs {

struct MapGenParams {
    int width = 16;
    int height = 12;
    int room_count = 1;
    double candidate_density = 0.25;
};

// Difficulty presets: easy = one room, medium = two rooms, hard = four rooms
// on a 30x30 grid. Throws ConfigError for unknown names.
MapGenParams preset_params(const std::string& preset);

// Procedural indoor map: a connected empty region partitioned into rooms by
// walls with door gaps, furniture blobs, and candidate cells placed on
// wall-adjacent cells at the requested density. Deterministic per seed.
// Throws GenerationFailed when no connected layout is found within bounded
// retries.
GridMap generate_map(int width, int height, int room_count, double candidate_density,
                     std::uint64_t seed);

inline GridMap generate_map(const MapGenParams& params, std::uint64_t seed) {
    return generate_map(params.width, params.height, params.room_count, params.candidate_density,
                        seed);
}

} // namespace avs
