#include "ccrig/env/image.hpp"

#include <cmath>
#include <cstring>

#include "ccrig/core/errors.hpp"

namespace ccrig {

Mat images_to_batch(const std::vector<const Image*>& imgs) {
    if (imgs.empty()) throw ContractError("images_to_batch: empty batch");
    int dim = static_cast<int>(imgs[0]->size());
    Mat out(static_cast<int>(imgs.size()), dim);
    for (size_t i = 0; i < imgs.size(); ++i) {
        if (static_cast<int>(imgs[i]->size()) != dim)
            throw DimensionError("images_to_batch: inconsistent image sizes");
        std::memcpy(out.row(static_cast<int>(i)), imgs[i]->px.data(), sizeof(float) * dim);
    }
    return out;
}

Mat image_to_row(const Image& img) { return images_to_batch({&img}); }

std::vector<uint8_t> quantize(const Image& img) {
    std::vector<uint8_t> bytes(img.size());
    for (size_t i = 0; i < img.size(); ++i) {
        float v = img.px[i];
        v = v < 0.0f ? 0.0f : (v > 1.0f ? 1.0f : v);
        bytes[i] = static_cast<uint8_t>(std::lround(255.0f * v));
    }
    return bytes;
}

Image dequantize(const std::vector<uint8_t>& bytes, int w, int h) {
    Image img(w, h);
    if (bytes.size() != img.size()) throw DimensionError("dequantize: byte count mismatch");
    for (size_t i = 0; i < bytes.size(); ++i) img.px[i] = static_cast<float>(bytes[i]) / 255.0f;
    return img;
}

}  // namespace ccrig
