#pragma once

#include "ccrig/core/rng.hpp"
#include "ccrig/env/image.hpp"

namespace ccrig {

// One multiplicative factor per channel, drawn in [1−strength, 1+strength],
// applied identically to both images of an (s0, s_t) pair, clipped to [0,1].
void color_jitter(Image& s0, Image& s_t, float strength, Rng& rng);

}  // namespace ccrig
