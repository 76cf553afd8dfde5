#include "ccrig/gen/gaussian.hpp"

#include <cmath>

#include "ccrig/core/errors.hpp"

namespace ccrig {

double kl_to_standard_normal(const GaussianParams& g) {
    if (!g.mu.same_shape(g.logvar)) throw DimensionError("kl: mu/logvar shapes differ");
    double acc = 0.0;
    for (size_t i = 0; i < g.mu.size(); ++i) {
        double mu = g.mu[i];
        double lv = g.logvar[i];
        acc += mu * mu + std::exp(lv) - 1.0 - lv;
    }
    return 0.5 * acc;
}

}  // namespace ccrig
