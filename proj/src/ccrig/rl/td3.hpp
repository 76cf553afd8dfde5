#pragma once

#include <optional>
#include <span>

#include "ccrig/autodiff/adam.hpp"
#include "ccrig/autodiff/mlp.hpp"
#include "ccrig/rl/relabel.hpp"
#include "ccrig/rl/replay.hpp"

namespace ccrig {

struct TD3Config {
    float gamma = 0.99f;
    float tau = 0.005f;         // Polyak rate
    float policy_noise = 0.2f;  // target policy smoothing
    float noise_clip = 0.5f;
    int policy_delay = 2;
    float expl_sigma = 0.3f;
    int batch = 256;
    float lr = 1e-3f;
    std::vector<int> hidden{64, 64};
};

// Twin critics with a delayed tanh actor; goal-conditioned throughout.
struct TD3Params {
    int obs_dim = 0, goal_dim = 0, act_dim = 0;
    MLPParams actor, critic1, critic2;
    MLPParams actor_target, critic1_target, critic2_target;
};

TD3Params make_td3(int obs_dim, int goal_dim, int act_dim, const TD3Config& cfg, Rng& rng);

// a = clip(π(z̄, z̄_g) + N(0, σ²), −1, 1)
std::vector<float> select_action(const MLPParams& actor, std::span<const float> z,
                                 std::span<const float> goal, float sigma, Rng& rng);

std::vector<std::pair<std::string, Mat*>> named_params(TD3Params& p);

struct TD3UpdateStats {
    float critic_loss = 0.0f;
    float actor_loss = 0.0f;
    bool actor_updated = false;
    int tripwire_hits = 0;  // critic targets outside the divergence bound
};

// Owns the optimizers and the update counter for one agent.
class TD3Trainer {
public:
    TD3Trainer(TD3Params& params, const TD3Config& cfg);

    // One gradient step: sample → relabel → critic regression → (every
    // policy_delay steps) actor ascent + Polyak targets. Returns nullopt
    // without touching anything when the buffer holds fewer than a batch.
    std::optional<TD3UpdateStats> update(const ReplayBuffer& buffer, const RelabelStrategy& strategy,
                                         const GoalSampler& sampler, Rng& rng);

    int64_t updates() const { return updates_; }
    int64_t total_tripwire_hits() const { return tripwire_total_; }

private:
    TD3Params& p_;
    TD3Config cfg_;
    std::vector<Mat*> critic_params_, actor_params_;
    AdamState critic_opt_, actor_opt_;
    int64_t updates_ = 0;
    int64_t tripwire_total_ = 0;
    Tape tape_;
};

}  // namespace ccrig
