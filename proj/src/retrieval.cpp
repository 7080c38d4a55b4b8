#include "wjsketch/retrieval.hpp"

#include <algorithm>

namespace wjs {

namespace {

// Shared ranking kernel: descending score, ties by ascending row index.
template <class ScoreFn>
std::vector<std::size_t> rank_top(std::size_t corpus_size, std::size_t kappa,
                                  std::optional<std::size_t> exclude, ScoreFn&& score) {
  std::size_t candidates = corpus_size;
  if (exclude && *exclude < corpus_size) --candidates;
  if (kappa > candidates)
    fail(Errc::KappaTooLarge, "kappa " + std::to_string(kappa) + " exceeds " +
                                  std::to_string(candidates) + " candidates");

  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(candidates);
  for (std::size_t i = 0; i < corpus_size; ++i) {
    if (exclude && i == *exclude) continue;
    scored.emplace_back(score(i), i);
  }
  auto better = [](const std::pair<double, std::size_t>& a,
                   const std::pair<double, std::size_t>& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  };
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(kappa),
                    scored.end(), better);
  std::vector<std::size_t> out(kappa);
  for (std::size_t i = 0; i < kappa; ++i) out[i] = scored[i].second;
  return out;
}

}  // namespace

std::vector<std::size_t> exact_knn(const WeightedSet& query, const std::vector<WeightedSet>& corpus,
                                   std::size_t kappa, std::optional<std::size_t> exclude) {
  if (query.empty()) fail(Errc::EmptySet, "query set is empty");
  return rank_top(corpus.size(), kappa, exclude,
                  [&](std::size_t i) { return wjs_exact(query, corpus[i]); });
}

std::vector<std::size_t> sketch_knn(const Sketch& query, const std::vector<Sketch>& corpus,
                                    std::size_t kappa, std::optional<std::size_t> exclude) {
  return rank_top(corpus.size(), kappa, exclude,
                  [&](std::size_t i) { return estimate(query, corpus[i]); });
}

double precision_at(const std::vector<std::size_t>& truth,
                    const std::vector<std::size_t>& retrieved, std::size_t kappa) {
  if (kappa == 0) fail(Errc::InvalidArgument, "kappa must be >= 1");
  if (truth.size() < kappa || retrieved.size() < kappa)
    fail(Errc::ListTooShort, "both lists must have at least kappa entries");
  std::vector<std::size_t> a(truth.begin(), truth.begin() + static_cast<std::ptrdiff_t>(kappa));
  std::vector<std::size_t> b(retrieved.begin(),
                             retrieved.begin() + static_cast<std::ptrdiff_t>(kappa));
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t hits = 0, i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (b[j] < a[i]) ++j;
    else ++hits, ++i, ++j;
  }
  return static_cast<double>(hits) / static_cast<double>(kappa);
}

}  // namespace wjs
