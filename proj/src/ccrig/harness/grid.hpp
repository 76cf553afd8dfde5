#pragma once

#include <string>

#include "ccrig/gen/models.hpp"
#include "ccrig/pipeline/dataset.hpp"

namespace ccrig {

// Binary PPM (P6) writer; the grid has no separators so tile (r,c) sits at
// pixel block (r·size, c·size).
void write_ppm(const Image& img, const std::string& path);

// Column j: context s0ⱼ on top, n_samples prior decodes below. The plain
// VAE variant shows unconditional samples under the same contexts.
Image sample_grid(const CCVAEParams& model, const Dataset& ds, int n_contexts, int n_samples,
                  Rng& rng);
Image sample_grid(const VAEParams& model, const Dataset& ds, int n_contexts, int n_samples, Rng& rng);

// Coherence scoring for a decoded sample against its context's ground truth:
// l2 distance of the estimated agent color to the true color, and IoU of the
// recovered wall mask against the layout's mask.
struct CoherenceScore {
    float color_l2 = 0.0f;
    float layout_iou = 0.0f;
};
CoherenceScore score_sample(const Image& sample, const Color3& true_color, int layout_id);

}  // namespace ccrig
