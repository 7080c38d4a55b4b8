#include "wjsketch/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "wjsketch/parallel.hpp"

namespace wjs {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool contains(const std::vector<Scheme>& schemes, Scheme s) {
  return std::find(schemes.begin(), schemes.end(), s) != schemes.end();
}

void check_common(const std::vector<Scheme>& schemes, std::size_t k) {
  if (schemes.empty()) fail(Errc::InvalidArgument, "at least one scheme is required");
  if (k == 0) fail(Errc::InvalidArgument, "sketch size K must be >= 1");
}

}  // namespace

std::vector<BiasCurve> run_bias(const WeightedSet& a, const WeightedSet& b,
                                const std::string& pair_name, const BiasConfig& cfg) {
  check_common(cfg.schemes, cfg.k_max);
  if (cfg.reps == 0) fail(Errc::InvalidArgument, "repetitions must be >= 1");
  if (cfg.pool_size == 0) fail(Errc::ZeroSize, "pool size must be >= 1");
  const double truth = wjs_exact(a, b);

  const bool want_icws = contains(cfg.schemes, Scheme::Icws);
  const bool want_icws0 = contains(cfg.schemes, Scheme::Icws0);
  const bool want_scws = contains(cfg.schemes, Scheme::Scws);

  // Per-repetition cumulative match counts; reduced to mean curves afterwards
  // so the parallel phase never shares accumulators.
  const std::size_t K = cfg.k_max;
  std::vector<std::uint32_t> icws_cum, icws0_cum, scws_cum;
  if (want_icws) icws_cum.assign(cfg.reps * K, 0);
  if (want_icws0) icws0_cum.assign(cfg.reps * K, 0);
  if (want_scws) scws_cum.assign(cfg.reps * K, 0);

  parallel_for(cfg.reps, cfg.threads, [&](std::size_t rep) {
    if (want_icws || want_icws0) {
      // One full ICWS pair serves both variants: the 0-bit curve only needs
      // the id half of each tuple.
      SketchConfig sc{Scheme::Icws, K, per_hash_seed(cfg.seed, rep, 0), nullptr};
      Sketch sa = build_sketch(a, sc);
      Sketch sb = build_sketch(b, sc);
      std::uint32_t tuple_hits = 0, id_hits = 0;
      for (std::size_t k = 0; k < K; ++k) {
        id_hits += sa.tuples[k].z_star == sb.tuples[k].z_star;
        tuple_hits += sa.tuples[k] == sb.tuples[k];
        if (want_icws) icws_cum[rep * K + k] = tuple_hits;
        if (want_icws0) icws0_cum[rep * K + k] = id_hits;
      }
    }
    if (want_scws) {
      SamplePool pool = SamplePool::build(cfg.pool_size, per_hash_seed(cfg.pool_seed, rep, 1));
      SketchConfig sc{Scheme::Scws, K, 0, &pool};
      Sketch sa = build_sketch(a, sc);
      Sketch sb = build_sketch(b, sc);
      std::uint32_t hits = 0;
      for (std::size_t k = 0; k < K; ++k) {
        hits += sa.ids[k] == sb.ids[k];
        scws_cum[rep * K + k] = hits;
      }
    }
  });

  auto reduce = [&](const std::vector<std::uint32_t>& cum, Scheme scheme) {
    BiasCurve curve;
    curve.pair_name = pair_name;
    curve.scheme = scheme;
    curve.true_wjs = truth;
    curve.reps = cfg.reps;
    curve.mean_bias.assign(K, 0.0);
    for (std::size_t k = 0; k < K; ++k) {
      double sum = 0.0;
      for (std::size_t rep = 0; rep < cfg.reps; ++rep)
        sum += static_cast<double>(cum[rep * K + k]) / static_cast<double>(k + 1) - truth;
      curve.mean_bias[k] = sum / static_cast<double>(cfg.reps);
    }
    return curve;
  };

  std::vector<BiasCurve> curves;
  for (Scheme s : cfg.schemes) {
    if (s == Scheme::Icws) curves.push_back(reduce(icws_cum, Scheme::Icws));
    if (s == Scheme::Icws0) curves.push_back(reduce(icws0_cum, Scheme::Icws0));
    if (s == Scheme::Scws) curves.push_back(reduce(scws_cum, Scheme::Scws));
  }
  return curves;
}

std::vector<ThroughputRow> run_throughput(const std::vector<WeightedSet>& rows,
                                          const std::string& dataset_name, double gen_seconds,
                                          const ThroughputConfig& cfg) {
  check_common(cfg.schemes, cfg.k);
  if (rows.empty()) fail(Errc::EmptyDataset, "throughput needs at least one row");
  SamplePool pool;
  if (contains(cfg.schemes, Scheme::Scws)) pool = SamplePool::build(cfg.pool_size, cfg.pool_seed);

  std::vector<ThroughputRow> out;
  double icws_seconds = 0.0;
  for (Scheme scheme : cfg.schemes) {
    SketchConfig sc{scheme, cfg.k, cfg.seed, scheme == Scheme::Scws ? &pool : nullptr};
    auto start = std::chrono::steady_clock::now();
    std::vector<Sketch> sketches = sketch_corpus(rows, sc, cfg.threads);
    double elapsed = seconds_since(start);
    if (scheme == Scheme::Icws) icws_seconds = elapsed;
    ThroughputRow row;
    row.dataset = dataset_name;
    row.scheme = scheme;
    row.k = cfg.k;
    row.rows = rows.size();
    row.threads = cfg.threads;
    row.gen_seconds = gen_seconds;
    row.sketch_seconds = elapsed;
    row.rows_per_sec = elapsed > 0.0 ? static_cast<double>(rows.size()) / elapsed : 0.0;
    out.push_back(std::move(row));
  }
  for (ThroughputRow& row : out)
    row.speedup_vs_icws =
        (icws_seconds > 0.0 && row.sketch_seconds > 0.0) ? icws_seconds / row.sketch_seconds : 0.0;
  return out;
}

PrecisionReport run_knn(const std::vector<WeightedSet>& corpus, const std::string& dataset_name,
                        const KnnConfig& cfg) {
  if (cfg.k == 0) fail(Errc::InvalidArgument, "sketch size K must be >= 1");
  if (cfg.kappa == 0) fail(Errc::InvalidArgument, "kappa must be >= 1");
  if (cfg.queries == 0) fail(Errc::InvalidArgument, "queries must be >= 1");
  if (corpus.empty()) fail(Errc::EmptyDataset, "knn needs a corpus");
  if (cfg.queries > corpus.size())
    fail(Errc::InvalidArgument, "more queries than corpus rows");
  if (cfg.kappa + 1 > corpus.size())
    fail(Errc::KappaTooLarge, "kappa leaves no candidates after self-exclusion");

  // Partial Fisher-Yates draw of distinct query rows.
  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  SplitMix64 rng(cfg.query_seed);
  for (std::size_t i = 0; i < cfg.queries; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.next() % (order.size() - i));
    std::swap(order[i], order[j]);
  }
  order.resize(cfg.queries);

  SamplePool pool;
  SketchConfig sc{cfg.scheme, cfg.k, cfg.sketch_seed, nullptr};
  if (cfg.scheme == Scheme::Scws) {
    pool = SamplePool::build(cfg.pool_size, cfg.pool_seed);
    sc.pool = &pool;
  }
  std::vector<Sketch> sketches = sketch_corpus(corpus, sc, cfg.threads);

  std::vector<double> per_query(cfg.queries, 0.0);
  parallel_for(cfg.queries, cfg.threads, [&](std::size_t qi) {
    const std::size_t row = order[qi];
    auto truth = exact_knn(corpus[row], corpus, cfg.kappa, row);
    auto retrieved = sketch_knn(sketches[row], sketches, cfg.kappa, row);
    per_query[qi] = precision_at(truth, retrieved, cfg.kappa);
  });

  PrecisionReport report;
  report.dataset = dataset_name;
  report.scheme = cfg.scheme;
  report.k = cfg.k;
  report.kappa = cfg.kappa;
  report.queries = cfg.queries;
  report.corpus_size = corpus.size();
  report.query_seed = cfg.query_seed;
  double sum = 0.0;
  for (double p : per_query) sum += p;
  report.precision = sum / static_cast<double>(cfg.queries);
  return report;
}

std::vector<PoolSweepRow> sweep_pool_bias(const WeightedSet& a, const WeightedSet& b,
                                          const BiasConfig& base,
                                          const std::vector<std::uint64_t>& pool_sizes) {
  if (pool_sizes.empty()) fail(Errc::InvalidArgument, "at least one pool size is required");
  std::vector<PoolSweepRow> out;
  for (std::uint64_t size : pool_sizes) {
    BiasConfig cfg = base;
    cfg.schemes = {Scheme::Scws};
    cfg.pool_size = size;
    BiasCurve curve = run_bias(a, b, "sweep", cfg).front();
    out.push_back({"bias", size, cfg.k_max, curve.mean_bias.back()});
  }
  return out;
}

std::vector<PoolSweepRow> sweep_pool_knn(const std::vector<WeightedSet>& corpus,
                                         const KnnConfig& base,
                                         const std::vector<std::uint64_t>& pool_sizes) {
  if (pool_sizes.empty()) fail(Errc::InvalidArgument, "at least one pool size is required");
  std::vector<PoolSweepRow> out;
  for (std::uint64_t size : pool_sizes) {
    KnnConfig cfg = base;
    cfg.scheme = Scheme::Scws;
    cfg.pool_size = size;
    PrecisionReport report = run_knn(corpus, "sweep", cfg);
    out.push_back({"knn", size, cfg.k, report.precision});
  }
  return out;
}

std::string bias_csv(const std::vector<BiasCurve>& curves) {
  std::string out = "pair,scheme,true_wjs,K,mean_bias,reps\n";
  for (const BiasCurve& c : curves) {
    for (std::size_t k = 0; k < c.mean_bias.size(); ++k) {
      out += c.pair_name;
      out += ',';
      out += scheme_name(c.scheme);
      out += ',';
      out += format_double(c.true_wjs);
      out += ',';
      out += std::to_string(k + 1);
      out += ',';
      out += format_double(c.mean_bias[k]);
      out += ',';
      out += std::to_string(c.reps);
      out += '\n';
    }
  }
  return out;
}

std::string throughput_csv(const std::vector<ThroughputRow>& rows) {
  std::string out =
      "dataset,scheme,K,rows,threads,gen_seconds,sketch_seconds,total_seconds,rows_per_sec,"
      "speedup_vs_icws\n";
  for (const ThroughputRow& r : rows) {
    out += r.dataset;
    out += ',';
    out += scheme_name(r.scheme);
    out += ',';
    out += std::to_string(r.k);
    out += ',';
    out += std::to_string(r.rows);
    out += ',';
    out += std::to_string(r.threads);
    out += ',';
    out += format_double(r.gen_seconds);
    out += ',';
    out += format_double(r.sketch_seconds);
    out += ',';
    out += format_double(r.gen_seconds + r.sketch_seconds);
    out += ',';
    out += format_double(r.rows_per_sec);
    out += ',';
    out += r.speedup_vs_icws > 0.0 ? format_double(r.speedup_vs_icws) : std::string();
    out += '\n';
  }
  return out;
}

std::string precision_csv(const std::vector<PrecisionReport>& reports) {
  std::string out = "dataset,scheme,K,kappa,queries,precision\n";
  for (const PrecisionReport& r : reports) {
    out += r.dataset;
    out += ',';
    out += scheme_name(r.scheme);
    out += ',';
    out += std::to_string(r.k);
    out += ',';
    out += std::to_string(r.kappa);
    out += ',';
    out += std::to_string(r.queries);
    out += ',';
    out += format_double(r.precision);
    out += '\n';
  }
  return out;
}

std::string pool_sweep_csv(const std::vector<PoolSweepRow>& rows) {
  std::string out = "task,pool_size,K,metric\n";
  for (const PoolSweepRow& r : rows) {
    out += r.task;
    out += ',';
    out += std::to_string(r.pool_size);
    out += ',';
    out += std::to_string(r.k);
    out += ',';
    out += format_double(r.metric);
    out += '\n';
  }
  return out;
}

}  // namespace wjs
