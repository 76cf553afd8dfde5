#include "ccrig/autodiff/adam.hpp"

#include <cmath>
#include <string>

#include "ccrig/core/errors.hpp"
#include "ccrig/kernels/kernels.hpp"

namespace ccrig {

AdamState::AdamState(const std::vector<Mat*>& params, AdamConfig cfg) : cfg_(cfg) {
    m_.reserve(params.size());
    v_.reserve(params.size());
    for (const Mat* p : params) {
        m_.emplace_back(p->rows(), p->cols());
        v_.emplace_back(p->rows(), p->cols());
    }
}

void AdamState::step(const std::vector<Mat*>& params, const std::vector<const Mat*>& grads) {
    if (params.size() != m_.size() || grads.size() != m_.size())
        throw DimensionError("adam: parameter list size changed (" + std::to_string(params.size()) +
                             "/" + std::to_string(grads.size()) + " vs " + std::to_string(m_.size()) + ")");
    t_ += 1;
    float bc1 = 1.0f - std::pow(cfg_.beta1, static_cast<float>(t_));
    float bc2 = 1.0f - std::pow(cfg_.beta2, static_cast<float>(t_));
    for (size_t i = 0; i < params.size(); ++i) {
        Mat& p = *params[i];
        const Mat& g = *grads[i];
        if (!p.same_shape(m_[i]) || !g.same_shape(m_[i]))
            throw DimensionError("adam: shape mismatch at parameter " + std::to_string(i));
        kern::ops().adam(p.data(), g.data(), m_[i].data(), v_[i].data(), p.size(), cfg_.lr,
                         cfg_.beta1, cfg_.beta2, cfg_.eps, bc1, bc2);
    }
}

}  // namespace ccrig
