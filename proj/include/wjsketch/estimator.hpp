#pragma once

#include "wjsketch/sketch.hpp"

namespace wjs {

// Exact Weighted Jaccard Similarity: sum of elementwise minima over the sum of
// elementwise maxima across the feature union (absent weights read as 0).
// Symmetric; result in [0, 1]; linear in the two set sizes.
double wjs_exact(const WeightedSet& s, const WeightedSet& o);

// Positionwise match indicators between two compatible sketches (same scheme,
// K, base seed / pool fingerprint). ICWS matches on the full (z*, t*) tuple;
// 0-bit schemes match on the id alone.
std::vector<std::uint8_t> match_indicators(const Sketch& a, const Sketch& b);

// Match count over all K positions divided by K.
double estimate(const Sketch& a, const Sketch& b);

// Match count over the first k_prime positions divided by k_prime — the
// estimate the same configuration would have produced at the smaller size.
double estimate_prefix(const Sketch& a, const Sketch& b, std::size_t k_prime);

}  // namespace wjs
