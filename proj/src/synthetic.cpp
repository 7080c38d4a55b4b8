#include "wjsketch/synthetic.hpp"

#include <charconv>
#include <cmath>

namespace wjs {

SyntheticSpec parse_synthetic_spec(std::string_view text) {
  SyntheticSpec spec;
  auto take = [&text](auto& out, bool last) {
    std::size_t comma = text.find(',');
    if ((comma == std::string_view::npos) != last)
      fail(Errc::InvalidArgument, "synthetic spec must be rows,dim,density,tail");
    std::string_view part = last ? text : text.substr(0, comma);
    auto res = std::from_chars(part.data(), part.data() + part.size(), out);
    if (res.ec != std::errc{} || res.ptr != part.data() + part.size())
      fail(Errc::InvalidArgument, "bad synthetic spec field '" + std::string(part) + "'");
    if (!last) text.remove_prefix(comma + 1);
  };
  take(spec.rows, false);
  take(spec.dim, false);
  take(spec.density, false);
  take(spec.tail, true);
  if (spec.rows == 0 || spec.dim == 0)
    fail(Errc::InvalidArgument, "synthetic rows and dim must be >= 1");
  if (!(spec.density > 0.0) || spec.density > 1.0)
    fail(Errc::InvalidArgument, "synthetic density must be in (0, 1]");
  if (!(spec.tail > 0.0) || !std::isfinite(spec.tail))
    fail(Errc::InvalidArgument, "synthetic tail must be finite and > 0");
  return spec;
}

double pareto_weight(SplitMix64& rng, double tail) {
  return std::pow(rng.next_unit_open(), -1.0 / tail);
}

Dataset make_synthetic_corpus(const SyntheticSpec& spec, std::uint64_t seed) {
  Dataset d;
  d.rows.reserve(spec.rows);
  d.labels.assign(spec.rows, 0);
  for (std::size_t row = 0; row < spec.rows; ++row) {
    // Salt re-draws so a density-starved row eventually lands nonempty.
    for (std::uint64_t attempt = 0;; ++attempt) {
      SplitMix64 rng(per_hash_seed(seed, row, attempt));
      std::vector<std::pair<FeatureId, double>> pairs;
      for (std::size_t f = 0; f < spec.dim; ++f) {
        if (rng.next_unit() < spec.density) pairs.emplace_back(f, pareto_weight(rng, spec.tail));
      }
      if (pairs.empty()) continue;
      d.rows.push_back(WeightedSet::from_pairs(pairs));
      break;
    }
  }
  return d;
}

std::pair<WeightedSet, WeightedSet> make_synthetic_pair(std::size_t dim, std::size_t shared,
                                                        double tail, std::uint64_t seed) {
  if (dim == 0) fail(Errc::InvalidArgument, "pair dim must be >= 1");
  if (shared > dim) fail(Errc::InvalidArgument, "shared features cannot exceed dim");
  if (!(tail > 0.0) || !std::isfinite(tail))
    fail(Errc::InvalidArgument, "pair tail must be finite and > 0");
  SplitMix64 rng(seed);
  std::vector<std::pair<FeatureId, double>> a, b;
  a.reserve(dim);
  b.reserve(dim);
  for (std::size_t f = 0; f < dim; ++f) {
    double w = pareto_weight(rng, tail);
    a.emplace_back(f, w);
    if (f < shared) b.emplace_back(f, w);  // identical weight on shared features
  }
  for (std::size_t f = shared; f < dim; ++f)
    b.emplace_back(dim + f, pareto_weight(rng, tail));  // disjoint remainder
  return {WeightedSet::from_pairs(a), WeightedSet::from_pairs(b)};
}

}  // namespace wjs
