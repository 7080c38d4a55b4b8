#include "wjsketch/estimator.hpp"

#include <algorithm>

namespace wjs {

double wjs_exact(const WeightedSet& s, const WeightedSet& o) {
  if (s.empty() && o.empty()) fail(Errc::BothEmpty, "WJS of two empty sets is 0/0");
  const auto& es = s.entries();
  const auto& eo = o.entries();
  double min_sum = 0.0, max_sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < es.size() || j < eo.size()) {
    if (j == eo.size() || (i < es.size() && es[i].id < eo[j].id)) {
      max_sum += es[i++].weight;  // absent in o: min 0, max w
    } else if (i == es.size() || eo[j].id < es[i].id) {
      max_sum += eo[j++].weight;
    } else {
      min_sum += std::min(es[i].weight, eo[j].weight);
      max_sum += std::max(es[i].weight, eo[j].weight);
      ++i, ++j;
    }
  }
  return min_sum / max_sum;
}

namespace {

void check_comparable(const Sketch& a, const Sketch& b) {
  if (a.scheme != b.scheme)
    fail(Errc::SchemeMismatch, std::string(scheme_name(a.scheme)) + " vs " + scheme_name(b.scheme));
  if (a.k() != b.k())
    fail(Errc::LengthMismatch, "K " + std::to_string(a.k()) + " vs " + std::to_string(b.k()));
  if (a.k() == 0) fail(Errc::LengthMismatch, "empty sketches");
  if (a.scheme == Scheme::Scws) {
    if (!a.pool || !b.pool || !(*a.pool == *b.pool))
      fail(Errc::PoolMismatch, "SCWS sketches were built against different pools");
  } else {
    if (a.base_seed != b.base_seed)
      fail(Errc::SeedMismatch, "ICWS sketches were built with different base seeds");
  }
}

}  // namespace

std::vector<std::uint8_t> match_indicators(const Sketch& a, const Sketch& b) {
  check_comparable(a, b);
  std::vector<std::uint8_t> hits(a.k());
  if (a.scheme == Scheme::Icws) {
    for (std::size_t k = 0; k < hits.size(); ++k) hits[k] = a.tuples[k] == b.tuples[k];
  } else {
    for (std::size_t k = 0; k < hits.size(); ++k) hits[k] = a.ids[k] == b.ids[k];
  }
  return hits;
}

double estimate(const Sketch& a, const Sketch& b) { return estimate_prefix(a, b, a.k()); }

double estimate_prefix(const Sketch& a, const Sketch& b, std::size_t k_prime) {
  check_comparable(a, b);
  if (k_prime == 0 || k_prime > a.k())
    fail(Errc::InvalidArgument, "prefix length must be in [1, K]");
  std::size_t matches = 0;
  if (a.scheme == Scheme::Icws) {
    for (std::size_t k = 0; k < k_prime; ++k) matches += a.tuples[k] == b.tuples[k];
  } else {
    for (std::size_t k = 0; k < k_prime; ++k) matches += a.ids[k] == b.ids[k];
  }
  return static_cast<double>(matches) / static_cast<double>(k_prime);
}

}  // namespace wjs
