#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wjsketch/rng.hpp"
#include "wjsketch/weighted_set.hpp"

namespace wjs {

// One Gamma(shape 2, scale 1) draw as the sum of two unit exponentials:
// -log(u1) - log(u2).
double gamma21(SplitMix64& rng);

// Identifies the exact pool a sketch was built against. Sketches are only
// comparable when every field matches.
struct PoolFingerprint {
  std::uint64_t seed = 0;
  std::uint64_t size = 0;
  std::uint64_t p1 = 0;
  std::uint64_t p2 = 0;
  bool single_precision = true;

  friend bool operator==(const PoolFingerprint&, const PoolFingerprint&) = default;
};

inline constexpr std::uint64_t kDefaultPoolSeed = 0x243F6A8885A308D3ull;  // pi fraction bits
inline constexpr std::uint64_t kDefaultPoolSize = 4000;
inline constexpr std::uint64_t kPoolPrime1 = 1073741827;  // 2^30 + 3
inline constexpr std::uint64_t kPoolPrime2 = 1073741831;  // 2^30 + 7

// Immutable pool of pre-sampled c*exp(-r) values, c and r independent
// Gamma(2,1). Values are generated in double precision; with the default
// single-precision storage each value is rounded through float once at build
// time so that in-memory comparisons, snapshots, and reloads all agree bit-for-bit.
class SamplePool {
 public:
  static SamplePool build(std::uint64_t size, std::uint64_t seed = kDefaultPoolSeed,
                          bool single_precision = true);

  // Test seam: a pool with injected values (fingerprint seed 0, double storage).
  static SamplePool from_values(std::vector<double> values);

  std::uint64_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  double value(std::uint64_t i) const { return values_[i]; }
  std::uint64_t seed() const { return fp_.seed; }
  std::uint64_t p1() const { return fp_.p1; }
  std::uint64_t p2() const { return fp_.p2; }
  bool single_precision() const { return fp_.single_precision; }
  const PoolFingerprint& fingerprint() const { return fp_; }

 private:
  std::vector<double> values_;
  PoolFingerprint fp_;

  friend SamplePool load_pool(const std::string& path);
};

// Pool slot for (feature, hash-index): (z*p1 + k*p2) mod |T|, with the products
// and the sum wrapping mod 2^64 before the final reduction.
std::uint64_t pool_index(FeatureId z, std::uint64_t k, const SamplePool& pool);

// Binary little-endian snapshot so distributed sketchers agree bit-exactly.
void save_pool(const std::string& path, const SamplePool& pool);
SamplePool load_pool(const std::string& path);

}  // namespace wjs
