#pragma once

#include <cstdint>

namespace wvsim {

/// Deterministic counting stream derived from (seed, key...) — value-like,
/// never shared. Identical keys give identical draws on every platform, so
/// Monte-Carlo output is independent of scheduling and worker count.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : state_(mix(seed)) {}

    /// Derive a substream; keys are hashed in order, so
    /// RandomStream(seed).fork(replicate).fork(setting) is reproducible.
    RandomStream fork(std::uint64_t key) const { return RandomStream(mix(state_ ^ mix(key)), 0); }

    std::uint64_t next_u64();
    /// Uniform in [0, 1).
    double uniform();
    /// Standard normal via Box-Muller (two uniforms per call).
    double normal();
    /// One Poisson draw. CDF inversion below mean 30, normal approximation
    /// (rounded, clamped at zero) above. Negative mean throws.
    std::int64_t poisson(double mean);

  private:
    RandomStream(std::uint64_t raw_state, int) : state_(raw_state) {}
    static std::uint64_t mix(std::uint64_t x);
    std::uint64_t state_;
};

}  // namespace wvsim
