#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace dispest {

/// Counter-seeded random stream: substream `index` of a 64-bit master seed.
///
/// State is derived from (seed, index) with a splitmix64 expansion and then
/// advanced as xoshiro256++. Two streams with different indices are
/// statistically independent, and a stream's output depends only on
/// (seed, index), never on which thread draws from it. This is what makes
/// event-parallel simulation bit-for-bit reproducible.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t x = seed ^ mix(index + 0x9E3779B97F4A7C15ULL);
        for (auto& word : state_) {
            x += 0x9E3779B97F4A7C15ULL;
            word = mix(x);
        }
        state_[0] |= 1;  // never all-zero
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in (0, 1]; safe as a log() argument.
    double next_unit() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Pair of independent standard normal deviates (Box-Muller).
    std::pair<double, double> next_gaussian_pair() {
        const double u1 = next_unit();
        const double u2 = next_unit();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * std::numbers::pi * u2;
        return {rad * std::cos(ang), rad * std::sin(ang)};
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::array<std::uint64_t, 4> state_{};
};

}  // namespace dispest
