#include "ccrig/gen/train.hpp"

#include <algorithm>

#include "ccrig/autodiff/adam.hpp"
#include "ccrig/core/errors.hpp"

namespace ccrig {

namespace {

struct PairBatch {
    Mat s0;
    Mat st;
};

// (s0, s_t) pairs: an episode, then a timestep (0 = the first image itself).
PairBatch sample_pair_batch(const Dataset& ds, int batch, Rng& rng) {
    PairBatch b{Mat(batch, ds.image_dim()), Mat(batch, ds.image_dim())};
    for (int r = 0; r < batch; ++r) {
        int ep = rng.uniform_int(static_cast<int>(ds.episodes.size()));
        int t = rng.uniform_int(ds.images_per_episode(ep));
        ds.fill_image_row(ep, 0, b.s0.row(r));
        ds.fill_image_row(ep, t, b.st.row(r));
    }
    return b;
}

template <typename BuildFn>
TrainHistory run_training(const Dataset& ds, const GenTrainConfig& cfg, Rng& rng,
                          const std::vector<Mat*>& params, const BuildFn& build,
                          const TrainProgressFn& progress) {
    if (ds.episodes.empty()) throw ContractError("train: empty dataset");
    size_t images = 0;
    for (size_t e = 0; e < ds.episodes.size(); ++e) images += ds.images_per_episode(static_cast<int>(e));
    const int steps_per_epoch = std::max<int>(1, static_cast<int>(images) / cfg.batch);
    const int total_steps = steps_per_epoch * cfg.epochs;
    const int warmup = static_cast<int>(cfg.kl_warmup_frac * static_cast<float>(total_steps));

    AdamState opt(params, {.lr = cfg.lr});
    Rng batch_rng = rng.split("batches");
    Rng noise_rng = rng.split("noise");

    TrainHistory history;
    Tape tape;
    int step = 0;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        LossStats mean;
        for (int s = 0; s < steps_per_epoch; ++s, ++step) {
            LossConfig lc = cfg.loss;
            if (warmup > 0 && step < warmup)
                lc.beta *= static_cast<float>(step) / static_cast<float>(warmup);
            tape.reset();
            PairBatch batch = sample_pair_batch(ds, cfg.batch, batch_rng);
            BuiltLoss built = build(tape, batch, lc, noise_rng);
            tape.backward(built.loss);
            // built.params comes back in the same traversal order as `params`
            std::vector<const Mat*> grads;
            grads.reserve(built.leaves.size());
            for (Var leaf : built.leaves) grads.push_back(&tape.grad(leaf));
            opt.step(params, grads);
            mean.total += built.stats.total;
            mean.recon += built.stats.recon;
            mean.kl += built.stats.kl;
            mean.ctx += built.stats.ctx;
            if (progress) progress(step, built.stats);
        }
        mean.total /= steps_per_epoch;
        mean.recon /= steps_per_epoch;
        mean.kl /= steps_per_epoch;
        mean.ctx /= steps_per_epoch;
        history.epochs.push_back(mean);
    }
    return history;
}

}  // namespace

TrainHistory train_ccvae(CCVAEParams& p, const Dataset& ds, const GenTrainConfig& cfg, Rng& rng,
                         const TrainProgressFn& progress) {
    std::vector<Mat*> params;
    for (auto& [name, m] : named_params(p)) params.push_back(m);
    auto build = [&p](Tape& t, const PairBatch& b, const LossConfig& lc, Rng& noise) {
        return loss_ccvae(t, p, b.s0, b.st, lc, noise);
    };
    return run_training(ds, cfg, rng, params, build, progress);
}

TrainHistory train_vae(VAEParams& p, const Dataset& ds, const GenTrainConfig& cfg, Rng& rng,
                       const TrainProgressFn& progress) {
    std::vector<Mat*> params;
    for (auto& [name, m] : named_params(p)) params.push_back(m);
    auto build = [&p](Tape& t, const PairBatch& b, const LossConfig& lc, Rng& noise) {
        return loss_vae(t, p, b.st, lc, noise);
    };
    return run_training(ds, cfg, rng, params, build, progress);
}

}  // namespace ccrig
