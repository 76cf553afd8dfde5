#pragma once

#include <functional>
#include <optional>

#include "ccrig/pipeline/dataset.hpp"
#include "ccrig/pipeline/repr.hpp"
#include "ccrig/rl/td3.hpp"

namespace ccrig {

struct RunnerConfig {
    int64_t online_steps = 150000;
    int64_t pretrain_steps = 100000;
    int64_t warmup_steps = 1000;   // env steps before gradient updates start
    int updates_per_step = 1;
    int64_t eval_interval = 5000;  // env steps (gradient steps when pretraining)
    int eval_episodes = 20;
    size_t buffer_capacity = 200000;
};

struct EvalMetrics {
    float mean_dist = 0.0f;
    float median_dist = 0.0f;
    float std_dist = 0.0f;
    float mean_latent_dist = 0.0f;
    float median_latent_dist = 0.0f;
    int episodes = 0;
};

struct RlProgress {
    int64_t step = 0;  // env steps online, gradient steps offline
    int episode = 0;
    const char* phase = "train";
    std::optional<EvalMetrics> eval;
    float critic_loss = 0.0f;  // mean since the previous report
    float actor_loss = 0.0f;
};
using RlProgressFn = std::function<void(const RlProgress&)>;

// Deterministic goal-image evaluation: reset, draw a same-scene goal, encode
// it, roll the deterministic policy, score the final true-state distance.
EvalMetrics evaluate_policy(const Env& env, Representation& repr, const MLPParams& actor,
                            int episodes, Rng eval_rng);
// Same protocol with uniform random actions; the pretraining baseline.
EvalMetrics evaluate_random_policy(const Env& env, int episodes, Rng eval_rng);

struct RunResult {
    EvalMetrics initial_eval;
    EvalMetrics final_eval;
    int64_t steps = 0;
    int64_t tripwire_hits = 0;
};

// Online loop: per episode sample a goal, roll out with exploration noise,
// store, and take one gradient step per env step after warmup. The
// environment streams derive from `seed` alone so different methods under
// the same seed see identical scenes and evaluation goals.
RunResult run_online(const Env& env, Representation& repr, TD3Params& td3, const TD3Config& td3_cfg,
                     const RelabelStrategy& strategy, const RunnerConfig& cfg, uint64_t seed,
                     const RlProgressFn& progress = {});

// Off-policy path: encode the dataset into the buffer (a prior goal attached
// per episode), then run gradient updates with no environment interaction.
RunResult pretrain_offpolicy(const Env& env, Representation& repr, const Dataset& ds, TD3Params& td3,
                             const TD3Config& td3_cfg, const RelabelStrategy& strategy,
                             const RunnerConfig& cfg, uint64_t seed,
                             const RlProgressFn& progress = {});

}  // namespace ccrig
