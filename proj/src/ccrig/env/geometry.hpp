#pragma once

#include <string>
#include <vector>

#include "ccrig/core/rng.hpp"

namespace ccrig {

struct Vec2 {
    float x = 0.0f, y = 0.0f;
};

struct Color3 {
    float r = 0.0f, g = 0.0f, b = 0.0f;
};

// Axis-aligned rectangle in world coordinates, arena is [-1,1]².
struct Rect {
    float x0, y0, x1, y1;

    float width() const { return x1 - x0; }
    float height() const { return y1 - y0; }
    float area() const { return width() * height(); }
};

struct WallLayout {
    int id = 0;
    std::vector<Rect> rects;
};

inline constexpr int kNumLayouts = 15;
inline constexpr float kAgentRadius = 0.06f;

// The 15 fixed wall arrangements, generated deterministically at first use
// and validated (connected free space, ≥50% free area, bounded traversal)
// before being handed out.
const std::vector<WallLayout>& wall_layouts();

// Structured text dump of all layouts, one line per rectangle; stable across
// runs so it can serve as a test fixture.
std::string layouts_dump();

// Disc of radius r centred at p against the exact rectangle.
bool disc_intersects_rect(Vec2 p, float r, const Rect& rect);

// True if a disc of radius r may sit at p: inside the arena and outside all
// radius-expanded wall rectangles (the same expansion movement clipping uses).
bool position_free(const WallLayout& layout, Vec2 p, float r);

Vec2 sample_free_position(const WallLayout& layout, float r, Rng& rng);

// One coordinate of an axis-separated move: travel from→to with the other
// coordinate fixed, stopping at radius-expanded wall faces and the arena
// edge. Returns the resolved coordinate.
float resolve_axis_move(float from, float to, float other, bool moving_x, const WallLayout& layout,
                        float r);

}  // namespace ccrig
