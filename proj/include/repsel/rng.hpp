#pragma once

#include <cstdint>

namespace repsel {

/// Deterministic PRNG with explicit stream derivation. The uniform mapping is
/// done from raw 64-bit output so results do not depend on the standard
/// library's distribution implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {
    // splitmix-style warmup so nearby seeds do not produce nearby streams
    next_u64();
    next_u64();
  }

  /// Independent child stream, stable under (seed, stream) pairs.
  static Rng derive(uint64_t seed, uint64_t stream) {
    return Rng(mix(mix(seed) ^ mix(stream + 0x9e3779b97f4a7c15ull)));
  }

  uint64_t next_u64() {
    state_ = mix(state_ + 0x9e3779b97f4a7c15ull);
    return state_;
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n), n > 0.
  int uniform_int(int n) { return static_cast<int>(next_u64() % static_cast<uint64_t>(n)); }

 private:
  static uint64_t mix(uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }
  uint64_t state_;
};

}  // namespace repsel
