#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ccrig/autodiff/mlp.hpp"
#include "ccrig/core/mat.hpp"
#include "ccrig/core/rng.hpp"
#include "ccrig/gen/gaussian.hpp"

namespace ccrig {

struct GenConfig {
    int image_dim = 32 * 32 * 3;
    int z_t = 4;  // bottlenecked per-step latent
    int z_c = 8;  // unrestricted context latent
    std::vector<int> enc_hidden{256, 128};
    std::vector<int> dec_hidden{128, 256};

    int zbar() const { return z_t + z_c; }
};

// Context-conditioned VAE: e0 embeds the episode's first image into z_c,
// e produces the per-step Gaussian given (s, z_c), d reconstructs the step
// from (z_t, z_c) and d0 reconstructs the first image from z_c alone.
// e and e0 share no weights.
struct CCVAEParams {
    GenConfig cfg;
    MLPParams e0;
    MLPParams e;
    MLPParams d;
    MLPParams d0;
};

// Plain VAE baseline; latent width equals zbar so downstream policies see
// equally wide inputs.
struct VAEParams {
    GenConfig cfg;
    int z_dim = 12;
    MLPParams enc;
    MLPParams dec;
};

CCVAEParams make_ccvae(const GenConfig& cfg, Rng& rng);
VAEParams make_vae(const GenConfig& cfg, Rng& rng);

// Deterministic context embedding of (a batch of) first images.
Mat encode_context(const CCVAEParams& p, const Mat& s0);
// Per-step posterior q(z_t | s, z_c(s0)); logvar comes back clamped.
GaussianParams encode(const CCVAEParams& p, const Mat& s, const Mat& s0);
GaussianParams encode_with_context(const CCVAEParams& p, const Mat& s, const Mat& z_c);
Mat decode(const CCVAEParams& p, const Mat& z_t, const Mat& z_c);
Mat decode_context(const CCVAEParams& p, const Mat& z_c);

GaussianParams vae_encode(const VAEParams& p, const Mat& s);
Mat vae_decode(const VAEParams& p, const Mat& z);

struct SampledGoal {
    Mat z_g;     // 1×z_t draw from the prior
    Mat zbar_g;  // 1×zbar, z_g with the context block appended
};
SampledGoal sample_goal(const CCVAEParams& p, const Mat& s0_row, Rng& rng);

std::vector<std::pair<std::string, Mat*>> named_params(CCVAEParams& p);
std::vector<std::pair<std::string, Mat*>> named_params(VAEParams& p);

}  // namespace ccrig
