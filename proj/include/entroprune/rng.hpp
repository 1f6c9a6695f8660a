#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace entroprune {

// Deterministic RNG helpers. All randomized operations in the library draw
// through these so that a (seed) pair replays identically on any platform;
// std::shuffle and std::*_distribution are implementation-defined and are
// avoided on purpose.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stream-splitting: derive an independent seed for subtask `tag`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    return splitmix64(seed ^ splitmix64(tag + 0x632be59bd9b4e019ULL));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, n) by rejection; n must be > 0.
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = engine_();
            if (r >= threshold) return r % n;
        }
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Fisher-Yates.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(bounded(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace entroprune
