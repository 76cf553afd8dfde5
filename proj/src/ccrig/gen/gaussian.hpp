#pragma once

#include "ccrig/core/mat.hpp"

namespace ccrig {

inline constexpr float kLogvarMin = -10.0f;
inline constexpr float kLogvarMax = 4.0f;

// Diagonal Gaussian over a batch: mu and logvar are both [B×z].
struct GaussianParams {
    Mat mu;
    Mat logvar;
};

// KL(N(mu, diag e^logvar) ‖ N(0, I)) summed over batch and dimensions:
// 0.5·Σ (mu² + e^logvar − 1 − logvar)
double kl_to_standard_normal(const GaussianParams& g);

}  // namespace ccrig
