#pragma once

#include <cstdint>
#include <string_view>

namespace ccrig {

// Counter-based pseudo-random generator: output i of stream (key) is a hash
// of (key, i), so streams can be split without sharing state and a sequence
// is fully determined by (seed, stream labels). The mixer is the SplitMix64
// finalizer, which is what SplittableRandom uses underneath.
class Rng {
public:
    Rng() : Rng(0) {}
    explicit Rng(uint64_t seed, uint64_t stream = 0);

    // Derive an independent child stream. Children with distinct labels (or
    // indices) never collide with each other or with the parent.
    Rng split(std::string_view label) const;
    Rng split(uint64_t index) const;

    uint64_t next_u64();
    uint32_t next_u32() { return static_cast<uint32_t>(next_u64() >> 32); }

    double uniform();                  // [0, 1)
    float uniform_f32() { return static_cast<float>(uniform()); }
    float uniform(float lo, float hi);
    int uniform_int(int n);            // [0, n)
    float normal();                    // N(0, 1), Box-Muller

    uint64_t key() const { return key_; }
    uint64_t counter() const { return counter_; }

private:
    uint64_t key_ = 0;
    uint64_t counter_ = 0;
};

}  // namespace ccrig
