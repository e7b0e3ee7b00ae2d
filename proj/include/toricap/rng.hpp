/**
 * @file rng.hpp
 * @brief Counter-based pseudo-random stream for reproducible sampling.
 *
 * Draw i of a stream is a pure function of (seed, i), so estimates are
 * bit-identical no matter how the sample loop is scheduled or split.
 */
#pragma once

#include <cstdint>

namespace toricap::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

/// Word at position `counter` of the stream keyed by `seed`.
inline std::uint64_t word_at(std::uint64_t seed, std::uint64_t counter) {
    return mix64(seed + (counter + 1) * kGolden);
}

/// Uniform double in [0, 1) at a stream position.
inline double uniform_at(std::uint64_t seed, std::uint64_t counter) {
    return static_cast<double>(word_at(seed, counter) >> 11) * 0x1.0p-53;
}

/// Uniform double in the open interval (0, 1) at a stream position.
inline double uniform_open_at(std::uint64_t seed, std::uint64_t counter) {
    return (static_cast<double>(word_at(seed, counter) >> 11) + 0.5) * 0x1.0p-53;
}

/// Sequential view over a counter-based stream.
class Stream {
public:
    explicit Stream(std::uint64_t seed, std::uint64_t counter = 0)
        : seed_(seed), counter_(counter) {}

    std::uint64_t next_word() { return word_at(seed_, counter_++); }
    double next_uniform() { return static_cast<double>(next_word() >> 11) * 0x1.0p-53; }
    double next_in(double lo, double hi) { return lo + (hi - lo) * next_uniform(); }
    /// Integer in [0, bound); bound must be positive. Modulo bias is
    /// irrelevant for the tiny bounds used here.
    std::uint64_t next_below(std::uint64_t bound) { return next_word() % bound; }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_;
};

}  // namespace toricap::rng
