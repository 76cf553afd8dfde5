#pragma once

#include <functional>

#include "ccrig/rl/replay.hpp"

namespace ccrig {

// Mixture over goal-relabel categories; weights must sum to 1.
struct RelabelStrategy {
    float future = 0.5f;
    float prior = 0.3f;
    float original = 0.2f;
};

// Method-specific "fresh goal consistent with this episode's scene". The
// context-conditioned variant draws z_g ~ N(0,I) and reuses the episode's
// context block; the plain-VAE variant draws the full latent; the oracle
// draws a feasible state in the episode's layout.
struct GoalSampler {
    std::function<std::vector<float>(const EpisodeRecord& ep, Rng& rng)> sample_prior;
};

struct RelabeledBatch {
    Mat z, a, z_next, goal;  // B×dim each
    std::vector<float> r;
};

// Per transition: future → a strictly later in-episode state becomes the
// goal (terminal transitions fall back to original); prior → sampler draw;
// original → the rollout's own goal. Reward is recomputed in every case.
RelabeledBatch relabel_batch(const ReplayBuffer& buffer, const std::vector<ReplayBuffer::Ref>& refs,
                             const RelabelStrategy& strategy, const GoalSampler& sampler, Rng& rng);

}  // namespace ccrig
