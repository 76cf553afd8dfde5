#pragma once

#include <cstdint>
#include <deque>
#include <span>
#include <vector>

#include "ccrig/core/mat.hpp"
#include "ccrig/core/rng.hpp"
#include "ccrig/env/geometry.hpp"

namespace ccrig {

// r = −‖z̄′ − z̄_g‖₂; also the oracle reward on true states.
float latent_reward(std::span<const float> z_next, std::span<const float> goal);

// One completed rollout. Latent row t is the encoding of s_t (so there are
// H+1 rows); transition t is (latents[t], actions[t], latents[t+1], goal).
// Raw frames ride along quantized so the representation could be recomputed.
struct EpisodeRecord {
    int episode_id = 0;
    int layout_id = 0;
    Color3 color;
    Mat latents;               // (H+1)×state_dim
    Mat actions;               // H×act_dim
    std::vector<float> goal;   // state_dim, the rollout's own goal
    std::vector<std::vector<uint8_t>> frames;  // H+1 quantized images, s0 first

    int steps() const { return actions.rows(); }
};

// Ring of whole episodes with a transition-count capacity. Eviction drops
// the oldest episode entirely; sampling is uniform over stored transitions
// without replacement within one batch.
class ReplayBuffer {
public:
    explicit ReplayBuffer(size_t capacity_transitions) : capacity_(capacity_transitions) {}

    void push_episode(EpisodeRecord ep);

    struct Ref {
        int episode;  // index into current storage
        int t;
    };
    std::vector<Ref> sample(int n, Rng& rng) const;

    size_t size() const { return size_; }
    size_t episode_count() const { return episodes_.size(); }
    const EpisodeRecord& episode(int idx) const { return episodes_[idx]; }
    // Largest ‖z̄′ − z̄_g‖ seen at push time; feeds the divergence tripwire.
    float max_goal_distance() const { return max_goal_dist_; }

private:
    size_t capacity_;
    size_t size_ = 0;
    std::deque<EpisodeRecord> episodes_;
    std::vector<size_t> cumulative_;  // prefix transition counts
    int next_id_ = 0;
    float max_goal_dist_ = 0.0f;

    void rebuild_cumulative();
};

}  // namespace ccrig
