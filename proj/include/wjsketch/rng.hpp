#pragma once

#include <cstdint>

namespace wjs {

// 64-bit avalanche mixer (the splitmix64 finalizer). This constant set is part
// of the wire contract: changing it changes every sketch ever produced.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Counter-based splitmix64 stream. Tiny state so it is cheap to reseed once per
// (feature, hash-index) pair, which is what the sketcher does millions of times.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix64(state_);
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1): exact zeros are re-drawn so log() stays finite.
  double next_unit_open() {
    double u;
    do {
      u = next_unit();
    } while (u == 0.0);
    return u;
  }

 private:
  std::uint64_t state_;
};

// Deterministic seed for the per-(feature, hash-index) generator: chain the
// mixer over base seed, feature id, and hash index. Order matters and is fixed.
constexpr std::uint64_t per_hash_seed(std::uint64_t base_seed, std::uint64_t z, std::uint64_t k) {
  std::uint64_t h = mix64(base_seed);
  h = mix64(h ^ z);
  return mix64(h ^ k);
}

}  // namespace wjs
