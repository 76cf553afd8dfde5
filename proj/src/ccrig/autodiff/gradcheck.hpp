#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ccrig/autodiff/tape.hpp"
#include "ccrig/core/mat.hpp"

namespace ccrig {

struct GradCheckReport {
    double max_rel_err = 0.0;
    std::string worst_param;
};

// Compares tape gradients against central finite differences. `build` must
// construct the scalar loss from the *current* contents of `params` on the
// given tape; it is re-invoked for every perturbed evaluation. The relative
// error is per parameter tensor: ‖g_fd − g_ad‖ / max(‖g_fd‖, ‖g_ad‖), which
// keeps the check well-conditioned in f32.
GradCheckReport grad_check(const std::vector<std::pair<std::string, Mat*>>& params,
                           const std::function<Var(Tape&)>& build, float epsilon = 1e-3f);

}  // namespace ccrig
