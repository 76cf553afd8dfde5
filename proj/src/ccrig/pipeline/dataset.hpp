#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ccrig/env/env.hpp"

namespace ccrig {

// One random-interaction episode. Images are stored quantized exactly as the
// on-disk format keeps them; `states` are kept in memory for diagnostics and
// are not serialized.
struct EpisodeData {
    int layout_id = 0;  // nav only
    Color3 color;
    std::vector<uint8_t> s0;
    std::vector<std::vector<uint8_t>> step_images;  // observation after each action
    std::vector<std::array<float, 2>> actions;
    std::vector<std::vector<float>> states;  // s0..sH true states (in-memory only)
};

struct Dataset {
    EnvKind env_kind = EnvKind::Nav;
    int width = 32, height = 32, channels = 3;
    std::vector<EpisodeData> episodes;

    int image_dim() const { return width * height * channels; }
    size_t transition_count() const {
        size_t n = 0;
        for (const auto& ep : episodes) n += ep.actions.size();
        return n;
    }
    // t = 0 is the episode's first image, t ≥ 1 the image after action t−1.
    int images_per_episode(int ep) const { return static_cast<int>(episodes[ep].step_images.size()) + 1; }
    void fill_image_row(int ep, int t, float* row) const;
};

// Uniform random actions in [-1,1]² for H steps per episode; a fresh
// layout/color each episode.
Dataset collect_random_dataset(const Env& env, int episodes, Rng& rng);

}  // namespace ccrig
