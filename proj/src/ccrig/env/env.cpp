#include "ccrig/env/env.hpp"

#include <algorithm>
#include <cmath>

#include "ccrig/core/errors.hpp"
#include "ccrig/env/render.hpp"

namespace ccrig {

namespace {

inline float clampf(float v, float lo, float hi) { return v < lo ? lo : (v > hi ? hi : v); }

// Move one coordinate, stopping at radius-expanded wall faces. The other
// coordinate is held fixed, so resolution is axis-separated and cannot
// tunnel at these step sizes.
float move_axis(float from, float to, float other, bool moving_x, const WallLayout& layout, float r) {
    float lo = std::min(from, to), hi = std::max(from, to);
    for (const Rect& w : layout.rects) {
        float band0 = moving_x ? w.y0 - r : w.x0 - r;
        float band1 = moving_x ? w.y1 + r : w.x1 + r;
        if (other <= band0 || other >= band1) continue;
        float face0 = moving_x ? w.x0 - r : w.y0 - r;
        float face1 = moving_x ? w.x1 + r : w.y1 + r;
        if (hi <= face0 || lo >= face1) continue;       // never enters the band
        if (from <= face0 && to > face0) to = face0;    // entering from the low side
        else if (from >= face1 && to < face1) to = face1;
        lo = std::min(from, to);
        hi = std::max(from, to);
    }
    return clampf(to, -1.0f, 1.0f);
}

}  // namespace

Color3 Env::sample_color(Rng& rng) const {
    Color3 c{rng.uniform_f32(), rng.uniform_f32(), rng.uniform_f32()};
    float mx = std::max({c.r, c.g, c.b});
    if (mx < cfg_.min_color_brightness) {
        if (mx < 1e-6f) return {cfg_.min_color_brightness, cfg_.min_color_brightness, cfg_.min_color_brightness};
        float s = cfg_.min_color_brightness / mx;
        c.r *= s;
        c.g *= s;
        c.b *= s;
    }
    return c;
}

std::pair<EnvState, Image> Env::reset(Rng& rng, std::optional<int> layout_id) const {
    EnvState s;
    s.kind = kind_;
    if (kind_ == EnvKind::Nav) {
        int id = layout_id ? *layout_id : rng.uniform_int(kNumLayouts);
        if (id < 0 || id >= kNumLayouts)
            throw ConfigError("layout_id " + std::to_string(id) + " outside [0," +
                              std::to_string(kNumLayouts) + ")");
        s.nav.layout_id = id;
        s.nav.color = sample_color(rng);
        s.nav.pos = sample_free_position(wall_layouts()[id], kAgentRadius, rng);
        s.nav.t = 0;
    } else {
        if (layout_id) throw ConfigError("pusher environment has no wall layouts");
        s.pusher.puck_color = sample_color(rng);
        for (int attempt = 0;; ++attempt) {
            s.pusher.arm = {rng.uniform(-1.0f, 1.0f), rng.uniform(-1.0f, 1.0f)};
            s.pusher.puck = {rng.uniform(-kPuckBound, kPuckBound), rng.uniform(-kPuckBound, kPuckBound)};
            float d = std::hypot(s.pusher.arm.x - s.pusher.puck.x, s.pusher.arm.y - s.pusher.puck.y);
            if (d >= kArmRadius + kPuckRadius || attempt > 1000) break;
        }
        s.pusher.t = 0;
    }
    return {s, render(s)};
}

std::tuple<EnvState, Image, bool> Env::step(const EnvState& s, float ax, float ay) const {
    ax = clampf(ax, -1.0f, 1.0f);
    ay = clampf(ay, -1.0f, 1.0f);
    EnvState next = s;
    if (kind_ == EnvKind::Nav) {
        const WallLayout& layout = wall_layouts()[s.nav.layout_id];
        float nx = clampf(s.nav.pos.x + cfg_.max_step * ax, -1.0f, 1.0f);
        nx = move_axis(s.nav.pos.x, nx, s.nav.pos.y, true, layout, kAgentRadius);
        float ny = clampf(s.nav.pos.y + cfg_.max_step * ay, -1.0f, 1.0f);
        ny = move_axis(s.nav.pos.y, ny, nx, false, layout, kAgentRadius);
        next.nav.pos = {nx, ny};
        next.nav.t = s.nav.t + 1;
    } else {
        Vec2 arm{clampf(s.pusher.arm.x + cfg_.max_step * ax, -1.0f, 1.0f),
                 clampf(s.pusher.arm.y + cfg_.max_step * ay, -1.0f, 1.0f)};
        Vec2 puck = s.pusher.puck;
        float dx = puck.x - arm.x, dy = puck.y - arm.y;
        float d = std::hypot(dx, dy);
        float contact = kArmRadius + kPuckRadius;
        if (d < contact) {
            float nx = d > 1e-8f ? dx / d : 1.0f;
            float ny = d > 1e-8f ? dy / d : 0.0f;
            puck.x = arm.x + nx * contact;
            puck.y = arm.y + ny * contact;
            puck.x = clampf(puck.x, -kPuckBound, kPuckBound);
            puck.y = clampf(puck.y, -kPuckBound, kPuckBound);
        }
        next.pusher.arm = arm;
        next.pusher.puck = puck;
        next.pusher.t = s.pusher.t + 1;
    }
    bool done = next.t() >= cfg_.horizon;
    return {next, render(next), done};
}

Image Env::render(const EnvState& s) const {
    return kind_ == EnvKind::Nav ? render_nav(s.nav, cfg_.image_size)
                                 : render_pusher(s.pusher, cfg_.image_size);
}

std::vector<float> Env::true_state(const EnvState& s) const {
    if (kind_ == EnvKind::Nav) return {s.nav.pos.x, s.nav.pos.y};
    return {s.pusher.arm.x, s.pusher.arm.y, s.pusher.puck.x, s.pusher.puck.y};
}

std::pair<EnvState, Image> Env::sample_eval_goal(const EnvState& s0, Rng& rng) const {
    EnvState g = s0;  // keeps color and layout
    if (kind_ == EnvKind::Nav) {
        g.nav.pos = sample_free_position(wall_layouts()[s0.nav.layout_id], kAgentRadius, rng);
        g.nav.t = 0;
    } else {
        for (int attempt = 0;; ++attempt) {
            g.pusher.puck = {rng.uniform(-kPuckBound, kPuckBound), rng.uniform(-kPuckBound, kPuckBound)};
            g.pusher.arm = {rng.uniform(-1.0f, 1.0f), rng.uniform(-1.0f, 1.0f)};
            float d = std::hypot(g.pusher.arm.x - g.pusher.puck.x, g.pusher.arm.y - g.pusher.puck.y);
            if (d >= kArmRadius + kPuckRadius || attempt > 1000) break;
        }
        g.pusher.t = 0;
    }
    return {g, render(g)};
}

}  // namespace ccrig
