#pragma once

#include "ccrig/env/env.hpp"

namespace ccrig {

// Cosmetic radii; larger than the contact discs so entities cover enough
// pixels at 32×32 for representation learning.
inline constexpr float kNavAgentRenderRadius = 0.14f;
inline constexpr float kPuckRenderRadius = 0.12f;
inline constexpr float kArmRenderRadius = 0.10f;
inline constexpr Color3 kWallColor{0.30f, 0.30f, 0.30f};
inline constexpr Color3 kArmColor{0.25f, 0.35f, 0.85f};

Image render_nav(const NavState& s, int size);
Image render_pusher(const PusherState& s, int size);

// Binary wall mask of a layout at the given resolution (pixel covered ≥ half
// by a wall rectangle). Used by layout-recovery scoring.
std::vector<uint8_t> wall_mask(const WallLayout& layout, int size);

}  // namespace ccrig
