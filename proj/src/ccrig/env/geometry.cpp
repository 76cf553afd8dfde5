#include "ccrig/env/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <stdexcept>

namespace ccrig {

bool disc_intersects_rect(Vec2 p, float r, const Rect& rect) {
    float cx = std::clamp(p.x, rect.x0, rect.x1);
    float cy = std::clamp(p.y, rect.y0, rect.y1);
    float dx = p.x - cx, dy = p.y - cy;
    return dx * dx + dy * dy < r * r - 1e-12f;
}

bool position_free(const WallLayout& layout, Vec2 p, float r) {
    if (p.x < -1.0f || p.x > 1.0f || p.y < -1.0f || p.y > 1.0f) return false;
    for (const Rect& w : layout.rects) {
        if (p.x > w.x0 - r && p.x < w.x1 + r && p.y > w.y0 - r && p.y < w.y1 + r) return false;
    }
    return true;
}

Vec2 sample_free_position(const WallLayout& layout, float r, Rng& rng) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        Vec2 p{rng.uniform(-1.0f, 1.0f), rng.uniform(-1.0f, 1.0f)};
        if (position_free(layout, p, r)) return p;
    }
    throw std::runtime_error("sample_free_position: layout leaves no room");  // unreachable for valid layouts
}

namespace {

// Occupancy-grid connectivity of the radius-inflated free space. Also
// reports the free-area fraction (exact union area) and the longest
// shortest-path in world units.
struct LayoutCheck {
    bool connected = false;
    float free_fraction = 0.0f;
    float max_path_len = 0.0f;
};

float union_area(const std::vector<Rect>& rects) {
    if (rects.empty()) return 0.0f;
    float total = 0.0f;
    for (const Rect& a : rects) total += a.area();
    if (rects.size() == 2) {
        const Rect& a = rects[0];
        const Rect& b = rects[1];
        float ox = std::max(0.0f, std::min(a.x1, b.x1) - std::max(a.x0, b.x0));
        float oy = std::max(0.0f, std::min(a.y1, b.y1) - std::max(a.y0, b.y0));
        total -= ox * oy;
    }
    return total;
}

LayoutCheck check_layout(const WallLayout& layout) {
    constexpr int G = 96;
    constexpr float cell = 2.0f / G;
    LayoutCheck res;
    res.free_fraction = 1.0f - union_area(layout.rects) / 4.0f;

    std::vector<int> grid(G * G, -1);  // -1 wall/unvisited marker set below
    std::vector<char> free_cell(G * G, 0);
    int total_free = 0;
    int start = -1;
    for (int i = 0; i < G; ++i) {
        for (int j = 0; j < G; ++j) {
            Vec2 p{-1.0f + (j + 0.5f) * cell, -1.0f + (i + 0.5f) * cell};
            if (position_free(layout, p, kAgentRadius)) {
                free_cell[i * G + j] = 1;
                total_free++;
                if (start < 0) start = i * G + j;
            }
        }
    }
    if (start < 0) return res;

    std::vector<int> dist(G * G, -1);
    std::queue<int> q;
    dist[start] = 0;
    q.push(start);
    int visited = 0, max_d = 0;
    while (!q.empty()) {
        int c = q.front();
        q.pop();
        visited++;
        max_d = std::max(max_d, dist[c]);
        int ci = c / G, cj = c % G;
        const int di[4] = {1, -1, 0, 0};
        const int dj[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
            int ni = ci + di[k], nj = cj + dj[k];
            if (ni < 0 || ni >= G || nj < 0 || nj >= G) continue;
            int n = ni * G + nj;
            if (!free_cell[n] || dist[n] >= 0) continue;
            dist[n] = dist[c] + 1;
            q.push(n);
        }
    }
    res.connected = visited == total_free;
    res.max_path_len = max_d * cell;
    return res;
}

std::vector<WallLayout> generate_layouts() {
    std::vector<WallLayout> layouts;
    for (int id = 0; id < kNumLayouts; ++id) {
        Rng rng(0x9A11005EULL, static_cast<uint64_t>(id));
        int n_rects = id < 7 ? 1 : 2;
        WallLayout layout;
        layout.id = id;
        bool success = false;
        for (int attempt = 0; attempt < 10000 && !success; ++attempt) {
            layout.rects.clear();
            bool ok = true;
            for (int r = 0; r < n_rects && ok; ++r) {
                float cx = rng.uniform(-0.5f, 0.5f);
                float cy = rng.uniform(-0.5f, 0.5f);
                float hw = rng.uniform(0.08f, 0.45f);
                float hh = rng.uniform(0.08f, 0.45f);
                Rect rect{cx - hw, cy - hh, cx + hw, cy + hh};
                rect.x0 = std::max(rect.x0, -0.8f);
                rect.y0 = std::max(rect.y0, -0.8f);
                rect.x1 = std::min(rect.x1, 0.8f);
                rect.y1 = std::min(rect.y1, 0.8f);
                if (rect.area() < 0.05f || rect.area() > 0.8f) ok = false;
                // corridors between two walls must pass the agent disc
                for (const Rect& prev : layout.rects) {
                    float gap_x = std::max(prev.x0 - rect.x1, rect.x0 - prev.x1);
                    float gap_y = std::max(prev.y0 - rect.y1, rect.y0 - prev.y1);
                    if (std::max(gap_x, gap_y) < 2.0f * kAgentRadius + 0.08f) ok = false;
                }
                layout.rects.push_back(rect);
            }
            if (!ok) continue;
            LayoutCheck chk = check_layout(layout);
            if (!chk.connected) continue;
            if (chk.free_fraction < 0.5f) continue;
            if (chk.max_path_len > 30.0f) continue;  // 4·H steps of max_step
            success = true;
        }
        if (!success) throw std::runtime_error("layout generation failed for id " + std::to_string(id));
        layouts.push_back(std::move(layout));
    }
    return layouts;
}

}  // namespace

const std::vector<WallLayout>& wall_layouts() {
    static const std::vector<WallLayout> layouts = generate_layouts();
    return layouts;
}

std::string layouts_dump() {
    std::string out;
    char buf[128];
    for (const WallLayout& l : wall_layouts()) {
        for (const Rect& r : l.rects) {
            std::snprintf(buf, sizeof(buf), "layout %d rect %.6f %.6f %.6f %.6f\n", l.id, r.x0, r.y0,
                          r.x1, r.y1);
            out += buf;
        }
    }
    return out;
}

}  // namespace ccrig
