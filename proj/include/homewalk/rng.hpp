// Seed derivation and uniform draws.
//
// Per-trial seeds come from a counter-based SplitMix64 pass over
// (master seed, trial index), so trial i's noise stream is the same no
// matter how trials are scheduled across workers.
#pragma once

#include <cstdint>

namespace homewalk {

// One SplitMix64 scramble round (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t state) {
    std::uint64_t z = state + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Seed for trial `index` under `master`. Stated contract: one SplitMix64
// round over master + (index+1) * golden-ratio increment.
constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

// Tiny counter-based engine used where a full mt19937_64 is overkill
// (per-phase offset draws). Satisfies UniformRandomBitGenerator.
class SplitMix64 {
  public:
    using result_type = std::uint64_t;
    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~0ULL; }
    constexpr result_type operator()() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t state_;
};

// Uniform double in [0,1) with 53 random bits.
constexpr double to_canonical(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Unbiased uniform integer in [1, n] via rejection.
template <class Rng>
std::uint64_t uniform_one_to_n(Rng& rng, std::uint64_t n) {
    const std::uint64_t limit = ~0ULL - (~0ULL % n);  // multiple of n
    std::uint64_t r = rng();
    while (r >= limit) r = rng();
    return 1 + r % n;
}

}  // namespace homewalk
