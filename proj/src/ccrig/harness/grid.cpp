#include "ccrig/harness/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

#include "ccrig/core/errors.hpp"
#include "ccrig/env/render.hpp"
#include "ccrig/harness/formats.hpp"

namespace ccrig {

void write_ppm(const Image& img, const std::string& path) {
    std::string out = "P6\n" + std::to_string(img.w) + " " + std::to_string(img.h) + "\n255\n";
    std::vector<uint8_t> bytes = quantize(img);
    out.append(reinterpret_cast<const char*>(bytes.data()), bytes.size());
    atomic_write_file(path, out);
}

namespace {

void paste_tile(Image& canvas, const Mat& row, int size, int tile_r, int tile_c) {
    for (int i = 0; i < size; ++i)
        std::memcpy(canvas.at(tile_r * size + i, tile_c * size),
                    row.row(0) + static_cast<size_t>(i) * size * 3, sizeof(float) * size * 3);
}

void paste_tile(Image& canvas, const Image& img, int tile_r, int tile_c) {
    for (int i = 0; i < img.h; ++i)
        std::memcpy(canvas.at(tile_r * img.h + i, tile_c * img.w), img.at(i, 0),
                    sizeof(float) * img.w * 3);
}

std::vector<int> pick_contexts(const Dataset& ds, int n, Rng& rng) {
    if (ds.episodes.empty()) throw ContractError("sample_grid: empty dataset");
    std::vector<int> picks(n);
    for (int i = 0; i < n; ++i) picks[i] = rng.uniform_int(static_cast<int>(ds.episodes.size()));
    return picks;
}

}  // namespace

Image sample_grid(const CCVAEParams& model, const Dataset& ds, int n_contexts, int n_samples,
                  Rng& rng) {
    const int size = ds.width;
    Image canvas(n_contexts * size, (n_samples + 1) * size);
    std::vector<int> picks = pick_contexts(ds, n_contexts, rng);
    for (int c = 0; c < n_contexts; ++c) {
        Mat s0(1, ds.image_dim());
        ds.fill_image_row(picks[c], 0, s0.row(0));
        paste_tile(canvas, s0, size, 0, c);
        Mat z_c = encode_context(model, s0);
        for (int r = 0; r < n_samples; ++r) {
            Mat z_g(1, model.cfg.z_t);
            for (size_t i = 0; i < z_g.size(); ++i) z_g[i] = rng.normal();
            paste_tile(canvas, decode(model, z_g, z_c), size, r + 1, c);
        }
    }
    return canvas;
}

Image sample_grid(const VAEParams& model, const Dataset& ds, int n_contexts, int n_samples,
                  Rng& rng) {
    const int size = ds.width;
    Image canvas(n_contexts * size, (n_samples + 1) * size);
    std::vector<int> picks = pick_contexts(ds, n_contexts, rng);
    for (int c = 0; c < n_contexts; ++c) {
        Mat s0(1, ds.image_dim());
        ds.fill_image_row(picks[c], 0, s0.row(0));
        paste_tile(canvas, s0, size, 0, c);
        for (int r = 0; r < n_samples; ++r) {
            Mat z(1, model.z_dim);
            for (size_t i = 0; i < z.size(); ++i) z[i] = rng.normal();
            paste_tile(canvas, vae_decode(model, z), size, r + 1, c);
        }
    }
    return canvas;
}

CoherenceScore score_sample(const Image& sample, const Color3& true_color, int layout_id) {
    const int size = sample.w;
    const WallLayout& layout = wall_layouts()[layout_id];

    // backdrop the sample should show if it contained no agent at all
    Image bg(size, size);
    std::fill(bg.px.begin(), bg.px.end(), 1.0f);
    {
        NavState s;
        s.layout_id = layout_id;
        s.color = {1.0f, 1.0f, 1.0f};  // white agent = invisible
        s.pos = {2.0f, 2.0f};          // and parked outside anyway
        bg = render_nav(s, size);
    }

    // agent color: diff-weighted mean over the pixels that deviate most
    std::vector<std::pair<float, int>> diffs;
    diffs.reserve(static_cast<size_t>(size) * size);
    for (int i = 0; i < size; ++i) {
        for (int j = 0; j < size; ++j) {
            const float* p = sample.at(i, j);
            const float* b = bg.at(i, j);
            float d = std::fabs(p[0] - b[0]) + std::fabs(p[1] - b[1]) + std::fabs(p[2] - b[2]);
            diffs.emplace_back(d, i * size + j);
        }
    }
    const int k = std::max(6, (size * size) / 80);  // ≈ expected agent area
    std::partial_sort(diffs.begin(), diffs.begin() + k, diffs.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
    double wsum = 0.0, cr = 0.0, cg = 0.0, cb = 0.0;
    for (int i = 0; i < k; ++i) {
        auto [w, idx] = diffs[i];
        const float* p = sample.px.data() + static_cast<size_t>(idx) * 3;
        wsum += w;
        cr += w * p[0];
        cg += w * p[1];
        cb += w * p[2];
    }
    CoherenceScore score;
    if (wsum > 1e-9) {
        cr /= wsum;
        cg /= wsum;
        cb /= wsum;
    } else {
        cr = cg = cb = 1.0;  // blank sample: pretend it painted background
    }
    score.color_l2 = static_cast<float>(std::sqrt(
        (cr - true_color.r) * (cr - true_color.r) + (cg - true_color.g) * (cg - true_color.g) +
        (cb - true_color.b) * (cb - true_color.b)));

    // wall recovery: dark and unsaturated pixels vs. the layout's mask
    std::vector<uint8_t> truth = wall_mask(layout, size);
    int inter = 0, uni = 0;
    for (int i = 0; i < size; ++i) {
        for (int j = 0; j < size; ++j) {
            const float* p = sample.at(i, j);
            float mean = (p[0] + p[1] + p[2]) / 3.0f;
            float spread = std::max({p[0], p[1], p[2]}) - std::min({p[0], p[1], p[2]});
            bool wall = mean < 0.65f && spread < 0.2f;
            bool gt = truth[static_cast<size_t>(i) * size + j] != 0;
            inter += wall && gt;
            uni += wall || gt;
        }
    }
    score.layout_iou = uni > 0 ? static_cast<float>(inter) / static_cast<float>(uni) : 1.0f;
    return score;
}

}  // namespace ccrig
