#pragma once
// rng.hpp -- counter-based pseudo-random streams for reproducible parallel
// simulation.
//
// Stream scheme (documented contract, relied on by the determinism tests):
//   base(seed, r)  = mix64(seed + (r + 1) * GAMMA)
//   draw k of stream r = mix64(base + (k + 1) * GAMMA)
// with GAMMA = 0x9E3779B97F4A7C15 (the SplitMix64 increment) and mix64 the
// SplitMix64 finalizer. A stream is keyed only by (seed, realization index),
// never by how realizations are partitioned across workers, so parallel runs
// are bit-identical for any worker count.

#include <cstdint>

namespace recwalk::rng {

inline constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class Stream {
  public:
    Stream(std::uint64_t seed, std::uint64_t realization)
        : state_(mix64(seed + (realization + 1) * kGamma)) {}

    std::uint64_t next_u64() {
        state_ += kGamma;
        return mix64(state_);
    }

    // Uniform on [0, 1), 53-bit resolution.
    double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; safe as a log() argument.
    double next_open_unit() { return double((next_u64() >> 11) + 1) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

// Standard normal deviates via Box-Muller on one stream; consumes exactly two
// uniforms per pair, caching the second deviate.
class NormalSampler {
  public:
    NormalSampler(std::uint64_t seed, std::uint64_t realization)
        : stream_(seed, realization) {}

    double next();

  private:
    Stream stream_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace recwalk::rng
