#pragma once

#include <cstdint>
#include <vector>

#include "ccrig/core/mat.hpp"

namespace ccrig {

// RGB image, values in [0,1], row 0 at the top, channels interleaved.
struct Image {
    int w = 0, h = 0;
    std::vector<float> px;  // h·w·3

    Image() = default;
    Image(int width, int height) : w(width), h(height), px(static_cast<size_t>(width) * height * 3, 0.0f) {}

    float* at(int row, int col) { return px.data() + (static_cast<size_t>(row) * w + col) * 3; }
    const float* at(int row, int col) const {
        return px.data() + (static_cast<size_t>(row) * w + col) * 3;
    }
    size_t size() const { return px.size(); }
};

// Flatten a batch of images into a [batch × w·h·3] matrix.
Mat images_to_batch(const std::vector<const Image*>& imgs);
Mat image_to_row(const Image& img);

// Dataset quantization: round(255·px) and back.
std::vector<uint8_t> quantize(const Image& img);
Image dequantize(const std::vector<uint8_t>& bytes, int w, int h);

}  // namespace ccrig
