#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wjsketch/pool.hpp"
#include "wjsketch/weighted_set.hpp"

namespace wjs {

enum class Scheme : std::uint8_t { Icws = 0, Icws0 = 1, Scws = 2 };

const char* scheme_name(Scheme s);
std::optional<Scheme> scheme_from_name(std::string_view name);  // "icws" | "icws0" | "scws"

struct IcwsHash {
  FeatureId z_star = 0;
  // Unbounded in principle but tiny in practice; 64 bits removes the edge case.
  std::int64_t t_star = 0;

  friend bool operator==(const IcwsHash&, const IcwsHash&) = default;
};

struct Sketch {
  Scheme scheme = Scheme::Icws;
  std::vector<IcwsHash> tuples;             // ICWS only
  std::vector<FeatureId> ids;               // 0-bit schemes only
  std::optional<std::uint64_t> base_seed;   // ICWS / ICWS-0Bit
  std::optional<PoolFingerprint> pool;      // SCWS

  std::size_t k() const { return scheme == Scheme::Icws ? tuples.size() : ids.size(); }

  friend bool operator==(const Sketch&, const Sketch&) = default;
};

struct SketchConfig {
  Scheme scheme = Scheme::Icws;
  std::size_t k = 1;
  std::uint64_t base_seed = 0;       // ICWS / ICWS-0Bit
  const SamplePool* pool = nullptr;  // SCWS
};

IcwsHash icws_minhash(const WeightedSet& s, std::uint64_t k, std::uint64_t base_seed);
FeatureId icws0_minhash(const WeightedSet& s, std::uint64_t k, std::uint64_t base_seed);
FeatureId scws_minhash(const WeightedSet& s, std::uint64_t k, const SamplePool& pool);

// Length-K sketch; a sketch of size K contains every smaller sketch of the
// same configuration as a prefix.
Sketch build_sketch(const WeightedSet& s, const SketchConfig& cfg);

// Parallelizes across rows; the result is identical for any thread count.
std::vector<Sketch> sketch_corpus(const std::vector<WeightedSet>& rows, const SketchConfig& cfg,
                                  int threads = 1);

// Drop the t component of a full ICWS sketch. Sketches that are already
// zero-bit (icws0, scws) pass through unchanged.
Sketch to_zero_bit(const Sketch& s);

void save_sketches(const std::string& path, const std::vector<Sketch>& sketches);
std::vector<Sketch> load_sketches(const std::string& path);

namespace detail {

struct IcwsDraw {
  double r;     // Gamma(2,1)
  double c;     // Gamma(2,1)
  double beta;  // Uniform [0,1)
};

// Shared ICWS per-feature kernel so the one-shot API and the batched sketch
// builder are bit-identical: t = floor(log w / r + beta), y = exp(r (t - beta)),
// a = c / (y e^r).
inline double icws_alpha(double logw, const IcwsDraw& d, std::int64_t& t_out) {
  double t = std::floor(logw / d.r + d.beta);
  double y = std::exp(d.r * (t - d.beta));
  double a = d.c / (y * std::exp(d.r));
  // Floor bound from the derivation: log w / r + beta - 1 < t <= log w / r + beta.
  assert(t <= logw / d.r + d.beta && logw / d.r + d.beta - 1.0 < t);
  t_out = static_cast<std::int64_t>(t);
  return a;
}

inline IcwsDraw icws_draw(std::uint64_t base_seed, FeatureId z, std::uint64_t k) {
  SplitMix64 g(per_hash_seed(base_seed, z, k));
  IcwsDraw d;
  d.r = gamma21(g);
  d.c = gamma21(g);
  d.beta = g.next_unit();
  return d;
}

// Test seam: run one ICWS hash with caller-supplied draws (e.g. forcing exact
// ties). Entries are visited in ascending id order; ties keep the first, so
// the smallest id wins.
template <class DrawFn>
IcwsHash icws_minhash_with(const WeightedSet& s, std::uint64_t k, DrawFn&& draw) {
  if (s.empty()) fail(Errc::EmptySet, "cannot minhash an empty set");
  IcwsHash best{};
  double best_a = std::numeric_limits<double>::infinity();
  for (const Entry& e : s.entries()) {
    IcwsDraw d = draw(e.id, k);
    std::int64_t t = 0;
    double a = icws_alpha(std::log(e.weight), d, t);
    if (a < best_a) {
      best_a = a;
      best = {e.id, t};
    }
  }
  return best;
}

}  // namespace detail

}  // namespace wjs
