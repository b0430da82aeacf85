#pragma once

#include <cstdint>
#include <limits>

namespace blowup {

inline constexpr std::uint64_t kDefaultSeed = 20070512ULL;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Stream identifiers for counter-based derivation. Each operation draws from
// its own stream so that adding randomness to one does not shift another.
enum class Stream : std::uint64_t {
    SpherePoints = 1,
    MeanCheck = 2,
    InvariantSampling = 3,
    RankSearch = 4,
    Cover = 5,
    Adjoin = 6,
    M0 = 7,
    Properties = 8,
    NetRotation = 9,
};

constexpr std::uint64_t derive_seed(std::uint64_t seed, Stream stream, std::uint64_t counter) {
    return splitmix64(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(stream))) + counter);
}

/// Small counter-seeded generator usable with <random> distributions.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t state) : state_(state) {}
    CounterRng(std::uint64_t seed, Stream stream, std::uint64_t counter)
        : state_(derive_seed(seed, stream, counter)) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; platform independent, unlike std::normal_distribution.
    double normal();

private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace blowup
