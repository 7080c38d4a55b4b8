#pragma once

#include <string_view>
#include <utility>

#include "wjsketch/rng.hpp"
#include "wjsketch/weighted_set.hpp"

namespace wjs {

// Heavy-tailed synthetic corpus: each of `dim` features appears independently
// with probability `density`; weights are Pareto draws u^(-1/tail) >= 1, the
// continuous stand-in for word-frequency columns.
struct SyntheticSpec {
  std::size_t rows = 0;
  std::size_t dim = 0;
  double density = 0.0;
  double tail = 1.5;
};

// Parses "rows,dim,density,tail".
SyntheticSpec parse_synthetic_spec(std::string_view text);

// One Pareto(tail) weight: u^(-1/tail), u uniform in (0, 1).
double pareto_weight(SplitMix64& rng, double tail);

// Deterministic for (spec, seed); rows are generated from independent per-row
// streams. Rows that come out empty are re-drawn so every row is sketchable.
Dataset make_synthetic_corpus(const SyntheticSpec& spec, std::uint64_t seed);

// Pair whose first `shared` features carry identical weights in both sets and
// whose remaining features are disjoint with independent weights; sweeping
// `shared` sweeps the exact WJS across (0, 1).
std::pair<WeightedSet, WeightedSet> make_synthetic_pair(std::size_t dim, std::size_t shared,
                                                        double tail, std::uint64_t seed);

}  // namespace wjs
