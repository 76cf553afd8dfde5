#pragma once

#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "ccrig/core/rng.hpp"
#include "ccrig/env/geometry.hpp"
#include "ccrig/env/image.hpp"

namespace ccrig {

struct EnvConfig {
    int horizon = 50;
    float max_step = 0.15f;
    int image_size = 32;
    float min_color_brightness = 0.3f;
};

enum class EnvKind : uint8_t { Nav = 0, Pusher = 1 };

struct NavState {
    Vec2 pos;
    Color3 color;
    int layout_id = 0;
    int t = 0;
};

struct PusherState {
    Vec2 arm;
    Vec2 puck;
    Color3 puck_color;
    int t = 0;
};

// Contact discs (dynamics). Render radii live in render.cpp and are purely
// cosmetic.
inline constexpr float kArmRadius = 0.05f;
inline constexpr float kPuckRadius = 0.08f;
inline constexpr float kPuckBound = 0.8f;

struct EnvState {
    EnvKind kind = EnvKind::Nav;
    NavState nav;
    PusherState pusher;
    int t() const { return kind == EnvKind::Nav ? nav.t : pusher.t; }
};

// Deterministic kinematic environments over [-1,1]². All dynamics are pure
// functions of (state, action); randomness enters only through reset and
// goal sampling, via the caller's generator.
class Env {
public:
    Env(EnvKind kind, EnvConfig cfg) : kind_(kind), cfg_(cfg) {}

    std::pair<EnvState, Image> reset(Rng& rng, std::optional<int> layout_id = std::nullopt) const;
    std::tuple<EnvState, Image, bool> step(const EnvState& s, float ax, float ay) const;
    Image render(const EnvState& s) const;
    std::vector<float> true_state(const EnvState& s) const;
    // Goal with the episode's color (and layout), uniform over reachable
    // configurations; returns the ground-truth state and its rendering.
    std::pair<EnvState, Image> sample_eval_goal(const EnvState& s0, Rng& rng) const;

    int state_dim() const { return kind_ == EnvKind::Nav ? 2 : 4; }
    EnvKind kind() const { return kind_; }
    const EnvConfig& config() const { return cfg_; }

private:
    Color3 sample_color(Rng& rng) const;

    EnvKind kind_;
    EnvConfig cfg_;
};

}  // namespace ccrig
