#include "ccrig/harness/jitter.hpp"

#include <algorithm>

#include "ccrig/core/errors.hpp"

namespace ccrig {

void color_jitter(Image& s0, Image& s_t, float strength, Rng& rng) {
    if (strength < 0.0f || strength > 1.0f) throw ContractError("color_jitter: strength outside [0,1]");
    float f[3];
    for (int c = 0; c < 3; ++c) f[c] = rng.uniform(1.0f - strength, 1.0f + strength);
    auto apply = [&](Image& img) {
        for (size_t i = 0; i < img.px.size(); ++i)
            img.px[i] = std::clamp(img.px[i] * f[i % 3], 0.0f, 1.0f);
    };
    apply(s0);
    apply(s_t);
}

}  // namespace ccrig
