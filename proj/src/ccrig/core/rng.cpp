#include "ccrig/core/rng.hpp"

#include <cmath>

#include "ccrig/core/errors.hpp"

namespace ccrig {
namespace {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

uint64_t mix64(uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

uint64_t fnv1a(std::string_view s) {
    uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : s) {
        h ^= static_cast<uint8_t>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

}  // namespace

Rng::Rng(uint64_t seed, uint64_t stream) {
    key_ = mix64(seed + kGolden * (stream + 1));
    counter_ = 0;
}

Rng Rng::split(std::string_view label) const {
    Rng child;
    child.key_ = mix64(key_ ^ fnv1a(label));
    child.counter_ = 0;
    return child;
}

Rng Rng::split(uint64_t index) const {
    Rng child;
    child.key_ = mix64(key_ + kGolden * (index + 0x51ED2701));
    child.counter_ = 0;
    return child;
}

uint64_t Rng::next_u64() {
    counter_++;
    return mix64(key_ + counter_ * kGolden);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

float Rng::uniform(float lo, float hi) {
    return lo + (hi - lo) * uniform_f32();
}

int Rng::uniform_int(int n) {
    if (n <= 0) throw ContractError("uniform_int: n must be positive");
    // multiply-shift; bias is < n / 2^64
    return static_cast<int>((static_cast<__uint128_t>(next_u64()) * static_cast<uint64_t>(n)) >> 64);
}

float Rng::normal() {
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    return static_cast<float>(r * std::cos(2.0 * M_PI * u2));
}

}  // namespace ccrig
