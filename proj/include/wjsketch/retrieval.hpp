#pragma once

#include <optional>

#include "wjsketch/estimator.hpp"

namespace wjs {

// Top-kappa corpus row indices by exact WJS against the query, descending;
// ties broken by ascending row index. `exclude` removes the query's own row
// from its candidate set.
std::vector<std::size_t> exact_knn(const WeightedSet& query, const std::vector<WeightedSet>& corpus,
                                   std::size_t kappa,
                                   std::optional<std::size_t> exclude = std::nullopt);

// Same ranking protocol with estimate() as the score.
std::vector<std::size_t> sketch_knn(const Sketch& query, const std::vector<Sketch>& corpus,
                                    std::size_t kappa,
                                    std::optional<std::size_t> exclude = std::nullopt);

// |truth[0..kappa) ∩ retrieved[0..kappa)| / kappa — order-insensitive within
// the top-kappa prefix.
double precision_at(const std::vector<std::size_t>& truth,
                    const std::vector<std::size_t>& retrieved, std::size_t kappa);

struct PrecisionReport {
  std::string dataset;
  Scheme scheme = Scheme::Icws;
  std::size_t k = 0;      // sketch size
  std::size_t kappa = 0;  // neighbors retrieved
  std::size_t queries = 0;
  std::size_t corpus_size = 0;
  std::uint64_t query_seed = 0;
  double precision = 0.0;  // mean over queries, in [0, 1]
};

}  // namespace wjs
