#pragma once

#include "wjsketch/retrieval.hpp"
#include "wjsketch/synthetic.hpp"

namespace wjs {

// ---- bias experiment -------------------------------------------------------

struct BiasConfig {
  std::vector<Scheme> schemes{Scheme::Icws, Scheme::Icws0, Scheme::Scws};
  std::size_t k_max = 1000;
  std::size_t reps = 200;
  std::uint64_t seed = 1;  // per-repetition sketch seeds derive from this
  std::uint64_t pool_seed = kDefaultPoolSeed;  // fresh per-repetition pools derive from this
  std::uint64_t pool_size = kDefaultPoolSize;
  int threads = 1;
};

struct BiasCurve {
  std::string pair_name;
  Scheme scheme = Scheme::Icws;
  double true_wjs = 0.0;
  std::size_t reps = 0;
  std::vector<double> mean_bias;  // [K-1] = mean(estimate at K) - true_wjs
};

// Mean bias of estimate() against the exact WJS for every K <= k_max, over
// `reps` repetitions with fresh seeds (and fresh pools for SCWS). Each
// repetition builds one K_max sketch pair and reads all smaller K as prefixes.
std::vector<BiasCurve> run_bias(const WeightedSet& a, const WeightedSet& b,
                                const std::string& pair_name, const BiasConfig& cfg);

// ---- throughput experiment -------------------------------------------------

struct ThroughputConfig {
  std::vector<Scheme> schemes{Scheme::Icws, Scheme::Icws0, Scheme::Scws};
  std::size_t k = 1000;
  std::uint64_t seed = 42;
  std::uint64_t pool_seed = kDefaultPoolSeed;
  std::uint64_t pool_size = kDefaultPoolSize;
  int threads = 1;  // single thread by default so speedups reflect FLOP savings
};

struct ThroughputRow {
  std::string dataset;
  Scheme scheme = Scheme::Icws;
  std::size_t k = 0;
  std::size_t rows = 0;
  int threads = 1;
  double gen_seconds = 0.0;  // parse / synthesis phase, timed by the caller
  double sketch_seconds = 0.0;
  double rows_per_sec = 0.0;
  double speedup_vs_icws = 0.0;  // icws sketch time / this scheme's; 0 when icws was not timed
};

std::vector<ThroughputRow> run_throughput(const std::vector<WeightedSet>& rows,
                                          const std::string& dataset_name, double gen_seconds,
                                          const ThroughputConfig& cfg);

// ---- retrieval experiment --------------------------------------------------

struct KnnConfig {
  Scheme scheme = Scheme::Scws;
  std::size_t k = 512;
  std::size_t kappa = 10;
  std::size_t queries = 100;
  std::uint64_t query_seed = 1234;
  std::uint64_t sketch_seed = 42;
  std::uint64_t pool_seed = kDefaultPoolSeed;
  std::uint64_t pool_size = kDefaultPoolSize;
  int threads = 1;
};

// Samples `queries` distinct corpus rows, ranks the rest by exact WJS and by
// sketch estimate (self excluded), and averages precision@kappa.
PrecisionReport run_knn(const std::vector<WeightedSet>& corpus, const std::string& dataset_name,
                        const KnnConfig& cfg);

// ---- pool-size sweep -------------------------------------------------------

struct PoolSweepRow {
  std::string task;  // "bias" or "knn"
  std::uint64_t pool_size = 0;
  std::size_t k = 0;
  double metric = 0.0;  // signed mean bias at K, or precision@kappa
};

std::vector<PoolSweepRow> sweep_pool_bias(const WeightedSet& a, const WeightedSet& b,
                                          const BiasConfig& base,
                                          const std::vector<std::uint64_t>& pool_sizes);

std::vector<PoolSweepRow> sweep_pool_knn(const std::vector<WeightedSet>& corpus,
                                         const KnnConfig& base,
                                         const std::vector<std::uint64_t>& pool_sizes);

// ---- CSV emission (deterministic fields are byte-stable) --------------------

std::string bias_csv(const std::vector<BiasCurve>& curves);
std::string throughput_csv(const std::vector<ThroughputRow>& rows);
std::string precision_csv(const std::vector<PrecisionReport>& reports);
std::string pool_sweep_csv(const std::vector<PoolSweepRow>& rows);

}  // namespace wjs
