#pragma once

#include <cstdint>
#include <vector>

#include "ccrig/core/mat.hpp"

namespace ccrig {

struct AdamConfig {
    float lr = 1e-3f;
    float beta1 = 0.9f;
    float beta2 = 0.999f;
    float eps = 1e-8f;
};

// Per-parameter moment buffers for a fixed parameter list. The list passed
// to step() must match the one used at construction, shape for shape.
class AdamState {
public:
    AdamState() = default;
    AdamState(const std::vector<Mat*>& params, AdamConfig cfg);

    void step(const std::vector<Mat*>& params, const std::vector<const Mat*>& grads);

    int64_t steps() const { return t_; }
    const AdamConfig& config() const { return cfg_; }
    void set_lr(float lr) { cfg_.lr = lr; }

private:
    AdamConfig cfg_;
    std::vector<Mat> m_, v_;
    int64_t t_ = 0;
};

}  // namespace ccrig
