#pragma once

#include <cstdint>

namespace sga {

// Counter-based pseudo-random generator.
//
// Every draw is a pure function of (seed, counter): the counter is pushed
// through a splitmix64-style avalanche after being folded into the seed with
// the 64-bit golden-ratio increment. Because there is no sequential state,
// draws can be evaluated in any order (or in parallel) and still reproduce
// bit-identically across platforms and thread counts. Samplers derive one
// counter per decision (e.g. one per vertex pair, in row-major pair order).
inline std::uint64_t mix64(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + counter * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Uniform double in [0,1) with 53 random bits.
inline double uniform01(std::uint64_t seed, std::uint64_t counter) {
    return static_cast<double>(mix64(seed, counter) >> 11) * 0x1.0p-53;
}

// Stateful convenience wrapper around the counter scheme. A Rng is cheap to
// construct; give each independent sampling task its own sub-seed via
// mix64(seed, task_tag) so streams never overlap.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next_u64() { return mix64(seed_, counter_++); }

    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound) by rejection, bias-free.
    std::uint64_t next_below(std::uint64_t bound) {
        // Rejection zone keeps the distribution exactly uniform.
        const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % bound;
    }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

} // namespace sga
