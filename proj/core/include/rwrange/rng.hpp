#pragma once

#include <cstdint>

namespace rwrange {

// SplitMix64 finalizer, used for seeding and seed/stream mixing.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a ^ (b * 0x9E3779B97F4A7C15ULL);
    splitmix64(s);
    return splitmix64(s);
}

/// xoshiro256** generator (Blackman & Vigna, public domain reference).
///
/// Streams are derived deterministically: the per-trial generator for
/// (master_seed, trial_index) is seeded from splitmix64 runs on
/// mix64(master_seed, trial_index), so trial partitioning is reproducible
/// under any parallel schedule.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& word : state_) word = splitmix64(s);
    }

    static Xoshiro256 for_trial(std::uint64_t master_seed, std::uint64_t trial_index) {
        return Xoshiro256(mix64(master_seed, trial_index));
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform in [0, bound) via the multiply-shift reduction.
    std::uint32_t bounded(std::uint32_t bound) {
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t state_[4];
};

} // namespace rwrange
