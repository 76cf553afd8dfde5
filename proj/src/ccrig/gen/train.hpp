#pragma once

#include <functional>
#include <vector>

#include "ccrig/gen/loss.hpp"
#include "ccrig/pipeline/dataset.hpp"

namespace ccrig {

struct GenTrainConfig {
    int epochs = 12;
    int batch = 128;
    float lr = 1e-3f;
    // β ramps linearly from 0 to its configured value over this fraction of
    // all gradient steps; keeps the bottleneck from collapsing before the
    // reconstruction path finds the moving parts.
    float kl_warmup_frac = 0.3f;
    LossConfig loss;
};

struct TrainHistory {
    std::vector<LossStats> epochs;  // per-epoch mean stats
};

using TrainProgressFn = std::function<void(int step, const LossStats&)>;

TrainHistory train_ccvae(CCVAEParams& p, const Dataset& ds, const GenTrainConfig& cfg, Rng& rng,
                         const TrainProgressFn& progress = {});
TrainHistory train_vae(VAEParams& p, const Dataset& ds, const GenTrainConfig& cfg, Rng& rng,
                       const TrainProgressFn& progress = {});

}  // namespace ccrig
