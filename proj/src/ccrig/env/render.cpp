#include "ccrig/env/render.hpp"

#include <algorithm>
#include <cmath>

namespace ccrig {
namespace {

// Pixel centers: col j ↦ x = −1 + (j+0.5)·px, row i ↦ y = 1 − (i+0.5)·px.
inline float px_size(int size) { return 2.0f / static_cast<float>(size); }

void blend(float* p, const Color3& c, float a) {
    p[0] += a * (c.r - p[0]);
    p[1] += a * (c.g - p[1]);
    p[2] += a * (c.b - p[2]);
}

void draw_rect(Image& img, const Rect& r, const Color3& c) {
    float px = px_size(img.w);
    for (int i = 0; i < img.h; ++i) {
        float y = 1.0f - (i + 0.5f) * px;
        float oy = std::min(r.y1, y + 0.5f * px) - std::max(r.y0, y - 0.5f * px);
        if (oy <= 0.0f) continue;
        for (int j = 0; j < img.w; ++j) {
            float x = -1.0f + (j + 0.5f) * px;
            float ox = std::min(r.x1, x + 0.5f * px) - std::max(r.x0, x - 0.5f * px);
            if (ox <= 0.0f) continue;
            blend(img.at(i, j), c, (ox * oy) / (px * px));
        }
    }
}

void draw_disc(Image& img, Vec2 center, float radius, const Color3& c) {
    float px = px_size(img.w);
    int j0 = std::max(0, static_cast<int>((center.x - radius + 1.0f) / px) - 1);
    int j1 = std::min(img.w - 1, static_cast<int>((center.x + radius + 1.0f) / px) + 1);
    int i0 = std::max(0, static_cast<int>((1.0f - center.y - radius) / px) - 1);
    int i1 = std::min(img.h - 1, static_cast<int>((1.0f - center.y + radius) / px) + 1);
    for (int i = i0; i <= i1; ++i) {
        float y = 1.0f - (i + 0.5f) * px;
        for (int j = j0; j <= j1; ++j) {
            float x = -1.0f + (j + 0.5f) * px;
            float d = std::hypot(x - center.x, y - center.y);
            float cover = std::clamp(0.5f + (radius - d) / px, 0.0f, 1.0f);
            if (cover > 0.0f) blend(img.at(i, j), c, cover);
        }
    }
}

void fill_white(Image& img) { std::fill(img.px.begin(), img.px.end(), 1.0f); }

}  // namespace

Image render_nav(const NavState& s, int size) {
    Image img(size, size);
    fill_white(img);
    for (const Rect& r : wall_layouts()[s.layout_id].rects) draw_rect(img, r, kWallColor);
    draw_disc(img, s.pos, kNavAgentRenderRadius, s.color);
    return img;
}

Image render_pusher(const PusherState& s, int size) {
    Image img(size, size);
    fill_white(img);
    draw_disc(img, s.puck, kPuckRenderRadius, s.puck_color);
    draw_disc(img, s.arm, kArmRenderRadius, kArmColor);
    return img;
}

std::vector<uint8_t> wall_mask(const WallLayout& layout, int size) {
    Image img(size, size);
    fill_white(img);
    for (const Rect& r : layout.rects) draw_rect(img, r, {0.0f, 0.0f, 0.0f});
    std::vector<uint8_t> mask(static_cast<size_t>(size) * size, 0);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) mask[static_cast<size_t>(i) * size + j] = img.at(i, j)[0] < 0.5f;
    return mask;
}

}  // namespace ccrig
