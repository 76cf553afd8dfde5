#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ccrig/autodiff/tape.hpp"
#include "ccrig/core/rng.hpp"
#include "ccrig/gen/models.hpp"

namespace ccrig {

struct LossConfig {
    float beta = 5.0f;                 // KL weight on the bottleneck
    float context_recon_weight = 1.0f;
};

struct LossStats {
    double total = 0.0;
    double recon = 0.0;  // Σ (ŝ_t − s_t)² over batch and pixels
    double kl = 0.0;     // unweighted KL term
    double ctx = 0.0;    // Σ (ŝ0 − s0)²
};

// A loss graph plus the handles needed to harvest parameter gradients.
struct BuiltLoss {
    Var loss;
    LossStats stats;
    std::vector<std::pair<std::string, Mat*>> params;
    std::vector<Var> leaves;  // aligned with params
};

// total = recon + β·KL(q(z|s_t,z_c) ‖ N(0,I)) + w·ctx. The KL applies to the
// bottleneck latent only; the context path carries no prior term. The batch
// holds (s0, s_t) image pairs as rows.
BuiltLoss loss_ccvae(Tape& tape, CCVAEParams& p, const Mat& s0_batch, const Mat& st_batch,
                     const LossConfig& cfg, Rng& rng);

// Plain VAE objective: recon + β·KL.
BuiltLoss loss_vae(Tape& tape, VAEParams& p, const Mat& batch, const LossConfig& cfg, Rng& rng);

}  // namespace ccrig
