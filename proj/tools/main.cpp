#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wjsketch/bench.hpp"
#include "wjsketch/vectorizer.hpp"

namespace {

using namespace wjs;

std::vector<Scheme> to_schemes(const std::vector<std::string>& names) {
  if (names.empty()) fail(Errc::InvalidArgument, "at least one --scheme is required");
  std::vector<Scheme> out;
  for (const std::string& n : names) {
    auto s = scheme_from_name(n);
    if (!s) fail(Errc::InvalidArgument, "unknown scheme '" + n + "' (icws, icws0, scws)");
    out.push_back(*s);
  }
  return out;
}

Scheme to_scheme(const std::string& name) { return to_schemes({name}).front(); }

// "dim,shared,tail" for the synthetic bias/sweep pair.
void parse_pair_spec(const std::string& text, std::size_t& dim, std::size_t& shared,
                     double& tail) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (std::size_t comma; (comma = text.find(',', start)) != std::string::npos; start = comma + 1)
    fields.push_back(text.substr(start, comma - start));
  fields.push_back(text.substr(start));
  if (fields.size() != 3) fail(Errc::InvalidArgument, "pair spec must be dim,shared,tail");
  auto parse = [](const std::string& f, auto& out) {
    auto res = std::from_chars(f.data(), f.data() + f.size(), out);
    if (res.ec != std::errc{} || res.ptr != f.data() + f.size())
      fail(Errc::InvalidArgument, "bad pair spec field '" + f + "'");
  };
  parse(fields[0], dim);
  parse(fields[1], shared);
  parse(fields[2], tail);
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot write " + out_path);
  out << content;
  if (!out) fail(Errc::IoError, "short write to " + out_path);
}

struct CorpusSource {
  std::string name;
  std::vector<WeightedSet> rows;
  std::vector<long long> labels;
  double gen_seconds = 0.0;
};

// Load from a LIBSVM file or synthesize; times the phase and drops empty rows
// (a min-hash of nothing is undefined).
CorpusSource load_corpus(const std::string& input, const std::string& synthetic,
                         std::uint64_t data_seed, bool rescale) {
  if (input.empty() == synthetic.empty())
    fail(Errc::InvalidArgument, "exactly one of --input and --synthetic is required");
  CorpusSource src;
  auto start = std::chrono::steady_clock::now();
  Dataset d;
  if (!input.empty()) {
    d = read_libsvm_file(input);
    src.name = input;
  } else {
    d = make_synthetic_corpus(parse_synthetic_spec(synthetic), data_seed);
    src.name = "synthetic:" + synthetic;
    // Keep the CSV dataset column comma-free.
    for (char& c : src.name)
      if (c == ',') c = 'x';
  }
  if (rescale) d = rescale_unit(d);
  std::size_t dropped = 0;
  for (std::size_t i = 0; i < d.rows.size(); ++i) {
    if (d.rows[i].empty()) {
      ++dropped;
      continue;
    }
    src.rows.push_back(std::move(d.rows[i]));
    src.labels.push_back(i < d.labels.size() ? d.labels[i] : 0);
  }
  if (dropped > 0)
    std::cerr << "note: dropped " << dropped << " empty row(s) before sketching\n";
  if (src.rows.empty()) fail(Errc::EmptyDataset, "no nonempty rows in " + src.name);
  src.gen_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return src;
}

WeightedSet first_row_of(const std::string& path) {
  Dataset d = read_libsvm_file(path);
  for (WeightedSet& row : d.rows)
    if (!row.empty()) return std::move(row);
  fail(Errc::EmptyDataset, "no nonempty rows in " + path);
}

std::pair<WeightedSet, WeightedSet> resolve_pair(const std::string& synthetic_pair,
                                                 const std::vector<std::string>& inputs,
                                                 std::uint64_t pair_seed) {
  if (synthetic_pair.empty() == inputs.empty())
    fail(Errc::InvalidArgument, "exactly one of --synthetic-pair and --inputs is required");
  if (!synthetic_pair.empty()) {
    std::size_t dim = 0, shared = 0;
    double tail = 0.0;
    parse_pair_spec(synthetic_pair, dim, shared, tail);
    return make_synthetic_pair(dim, shared, tail, pair_seed);
  }
  if (inputs.size() != 2) fail(Errc::InvalidArgument, "--inputs takes exactly two files");
  return {first_row_of(inputs[0]), first_row_of(inputs[1])};
}

// ---- subcommand option bags --------------------------------------------------

struct BiasOpts {
  std::vector<std::string> schemes{"icws", "icws0", "scws"};
  std::size_t k = 1000;
  std::size_t reps = 200;
  std::uint64_t seed = 1;
  std::uint64_t pool_seed = kDefaultPoolSeed;
  std::uint64_t pool_size = kDefaultPoolSize;
  std::uint64_t pair_seed = 7;
  int threads = 1;
  std::string synthetic_pair;
  std::vector<std::string> inputs;
  std::string pair_name = "pair0";
  std::string out;
};

struct BenchOpts {
  std::vector<std::string> schemes{"icws", "icws0", "scws"};
  std::size_t k = 1000;
  std::uint64_t seed = 42;
  std::uint64_t pool_seed = kDefaultPoolSeed;
  std::uint64_t pool_size = kDefaultPoolSize;
  std::uint64_t data_seed = 99;
  int threads = 1;
  std::string input, synthetic, out;
  bool rescale = false;
};

struct SweepOpts {
  std::string task = "bias";
  std::vector<std::uint64_t> pool_sizes;
  // bias task
  std::string synthetic_pair;
  std::vector<std::string> inputs;
  std::uint64_t pair_seed = 7;
  std::size_t reps = 200;
  // knn task
  std::string input, synthetic;
  std::uint64_t data_seed = 99;
  std::size_t kappa = 10;
  std::size_t queries = 100;
  std::uint64_t query_seed = 1234;
  // shared
  std::size_t k = 1000;
  std::uint64_t seed = 1;
  std::uint64_t pool_seed = kDefaultPoolSeed;
  int threads = 1;
  std::string out;
};

struct SketchOpts {
  std::string scheme = "scws";
  std::size_t k = 1000;
  std::uint64_t seed = 42;
  std::uint64_t pool_seed = kDefaultPoolSeed;
  std::uint64_t pool_size = kDefaultPoolSize;
  std::uint64_t data_seed = 99;
  int threads = 1;
  std::string input, synthetic, out, pool_file, save_pool_path;
  bool rescale = false;
};

struct VectorizeOpts {
  std::string input, out, labels;
  std::uint32_t b = 8;
  bool normalize = false;
};

struct KnnOpts {
  std::string scheme = "scws";
  std::size_t k = 512;
  std::size_t kappa = 10;
  std::size_t queries = 100;
  std::uint64_t seed = 42;
  std::uint64_t query_seed = 1234;
  std::uint64_t pool_seed = kDefaultPoolSeed;
  std::uint64_t pool_size = kDefaultPoolSize;
  std::uint64_t data_seed = 99;
  int threads = 1;
  std::string input, synthetic, out;
  bool rescale = false;
};

struct EstimateOpts {
  std::string a, b, out;
};

// ---- subcommand bodies --------------------------------------------------------

void cmd_bias(const BiasOpts& o) {
  auto [a, b] = resolve_pair(o.synthetic_pair, o.inputs, o.pair_seed);
  BiasConfig cfg;
  cfg.schemes = to_schemes(o.schemes);
  cfg.k_max = o.k;
  cfg.reps = o.reps;
  cfg.seed = o.seed;
  cfg.pool_seed = o.pool_seed;
  cfg.pool_size = o.pool_size;
  cfg.threads = o.threads;
  emit(o.out, bias_csv(run_bias(a, b, o.pair_name, cfg)));
}

void cmd_bench(const BenchOpts& o) {
  CorpusSource src = load_corpus(o.input, o.synthetic, o.data_seed, o.rescale);
  ThroughputConfig cfg;
  cfg.schemes = to_schemes(o.schemes);
  cfg.k = o.k;
  cfg.seed = o.seed;
  cfg.pool_seed = o.pool_seed;
  cfg.pool_size = o.pool_size;
  cfg.threads = o.threads;
  emit(o.out, throughput_csv(run_throughput(src.rows, src.name, src.gen_seconds, cfg)));
}

void cmd_pool_sweep(const SweepOpts& o) {
  std::vector<PoolSweepRow> rows;
  if (o.task == "bias") {
    auto [a, b] = resolve_pair(o.synthetic_pair, o.inputs, o.pair_seed);
    BiasConfig cfg;
    cfg.k_max = o.k;
    cfg.reps = o.reps;
    cfg.seed = o.seed;
    cfg.pool_seed = o.pool_seed;
    cfg.threads = o.threads;
    rows = sweep_pool_bias(a, b, cfg, o.pool_sizes);
  } else if (o.task == "knn") {
    CorpusSource src = load_corpus(o.input, o.synthetic, o.data_seed, false);
    KnnConfig cfg;
    cfg.k = o.k;
    cfg.kappa = o.kappa;
    cfg.queries = o.queries;
    cfg.query_seed = o.query_seed;
    cfg.sketch_seed = o.seed;
    cfg.pool_seed = o.pool_seed;
    cfg.threads = o.threads;
    rows = sweep_pool_knn(src.rows, cfg, o.pool_sizes);
  } else {
    fail(Errc::InvalidArgument, "--task must be bias or knn");
  }
  emit(o.out, pool_sweep_csv(rows));
}

void cmd_sketch(const SketchOpts& o) {
  CorpusSource src = load_corpus(o.input, o.synthetic, o.data_seed, o.rescale);
  SketchConfig cfg;
  cfg.scheme = to_scheme(o.scheme);
  cfg.k = o.k;
  cfg.base_seed = o.seed;
  SamplePool pool;
  if (cfg.scheme == Scheme::Scws) {
    pool = o.pool_file.empty() ? SamplePool::build(o.pool_size, o.pool_seed)
                               : load_pool(o.pool_file);
    cfg.pool = &pool;
    if (!o.save_pool_path.empty()) save_pool(o.save_pool_path, pool);
  }
  if (o.out.empty()) fail(Errc::InvalidArgument, "--out is required for sketch");
  save_sketches(o.out, sketch_corpus(src.rows, cfg, o.threads));
}

void cmd_vectorize(const VectorizeOpts& o) {
  if (o.input.empty() || o.out.empty())
    fail(Errc::InvalidArgument, "--input and --out are required for vectorize");
  std::vector<Sketch> sketches = load_sketches(o.input);
  std::vector<long long> labels(sketches.size(), 0);
  if (!o.labels.empty()) {
    Dataset d = read_libsvm_file(o.labels);
    if (d.labels.size() != sketches.size())
      fail(Errc::InvalidArgument, "--labels row count does not match sketch count");
    labels = d.labels;
  }
  std::ofstream out(o.out, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot write " + o.out);
  out << bbit_header_comment(sketches.front(), o.b) << '\n';
  for (std::size_t i = 0; i < sketches.size(); ++i)
    write_bbit_libsvm(out, labels[i], vectorize(sketches[i], o.b), o.normalize);
  if (!out) fail(Errc::IoError, "short write to " + o.out);
}

void cmd_knn(const KnnOpts& o) {
  CorpusSource src = load_corpus(o.input, o.synthetic, o.data_seed, o.rescale);
  KnnConfig cfg;
  cfg.scheme = to_scheme(o.scheme);
  cfg.k = o.k;
  cfg.kappa = o.kappa;
  cfg.queries = o.queries;
  cfg.query_seed = o.query_seed;
  cfg.sketch_seed = o.seed;
  cfg.pool_seed = o.pool_seed;
  cfg.pool_size = o.pool_size;
  cfg.threads = o.threads;
  emit(o.out, precision_csv({run_knn(src.rows, src.name, cfg)}));
}

void cmd_estimate(const EstimateOpts& o) {
  if (o.a.empty() || o.b.empty())
    fail(Errc::InvalidArgument, "--a and --b sketch files are required");
  std::vector<Sketch> sa = load_sketches(o.a);
  std::vector<Sketch> sb = load_sketches(o.b);
  if (sa.size() != sb.size())
    fail(Errc::LengthMismatch, "sketch files hold different row counts");
  std::string csv = "row,estimate\n";
  double sum = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    double est = estimate(sa[i], sb[i]);
    sum += est;
    csv += std::to_string(i) + "," + format_double(est) + "\n";
  }
  std::cout << "mean_estimate=" << format_double(sum / static_cast<double>(sa.size())) << "\n";
  if (!o.out.empty()) emit(o.out, csv);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted Jaccard similarity sketching: exact WJS, ICWS, 0-bit ICWS, and "
               "pooled SCWS, with bias/throughput/retrieval experiments"};
  app.require_subcommand(1);

  BiasOpts bias_o;
  auto* bias = app.add_subcommand("bias", "Mean estimate-vs-exact bias across sketch sizes");
  bias->add_option("--scheme", bias_o.schemes, "Schemes to run")->delimiter(',');
  bias->add_option("--k", bias_o.k, "Largest sketch size");
  bias->add_option("--reps", bias_o.reps, "Repetitions with fresh seeds");
  bias->add_option("--seed", bias_o.seed, "Base sketch seed");
  bias->add_option("--pool-seed", bias_o.pool_seed, "Base pool seed (SCWS)");
  bias->add_option("--pool-size", bias_o.pool_size, "Pool size (SCWS)");
  bias->add_option("--threads", bias_o.threads, "Worker threads");
  bias->add_option("--synthetic-pair", bias_o.synthetic_pair, "dim,shared,tail pair spec");
  bias->add_option("--pair-seed", bias_o.pair_seed, "Seed for the synthetic pair");
  bias->add_option("--inputs", bias_o.inputs, "Two LIBSVM files; first nonempty row each")
      ->expected(2);
  bias->add_option("--pair-name", bias_o.pair_name, "Pair label in the CSV");
  bias->add_option("--out", bias_o.out, "CSV path (stdout when omitted)");
  bias->callback([&] { cmd_bias(bias_o); });

  BenchOpts bench_o;
  auto* bench = app.add_subcommand("bench", "Sketch-construction throughput and speedups");
  bench->add_option("--scheme", bench_o.schemes, "Schemes to time")->delimiter(',');
  bench->add_option("--k", bench_o.k, "Sketch size");
  bench->add_option("--seed", bench_o.seed, "Sketch seed");
  bench->add_option("--pool-seed", bench_o.pool_seed, "Pool seed (SCWS)");
  bench->add_option("--pool-size", bench_o.pool_size, "Pool size (SCWS)");
  bench->add_option("--data-seed", bench_o.data_seed, "Synthetic data seed");
  bench->add_option("--threads", bench_o.threads, "Worker threads (default 1)");
  bench->add_option("--input", bench_o.input, "LIBSVM corpus");
  bench->add_option("--synthetic", bench_o.synthetic, "rows,dim,density,tail corpus spec");
  bench->add_flag("--rescale", bench_o.rescale, "Rescale weights to (0,1] per feature");
  bench->add_option("--out", bench_o.out, "CSV path (stdout when omitted)");
  bench->callback([&] { cmd_bench(bench_o); });

  SweepOpts sweep_o;
  auto* sweep = app.add_subcommand("pool-sweep", "Run a bias or knn task across pool sizes");
  sweep->add_option("--task", sweep_o.task, "bias or knn");
  sweep->add_option("--pool-sizes", sweep_o.pool_sizes, "Pool sizes to sweep")
      ->delimiter(',')
      ->required();
  sweep->add_option("--synthetic-pair", sweep_o.synthetic_pair, "dim,shared,tail (bias task)");
  sweep->add_option("--inputs", sweep_o.inputs, "Two LIBSVM files (bias task)")->expected(2);
  sweep->add_option("--pair-seed", sweep_o.pair_seed, "Synthetic pair seed");
  sweep->add_option("--reps", sweep_o.reps, "Bias repetitions");
  sweep->add_option("--input", sweep_o.input, "LIBSVM corpus (knn task)");
  sweep->add_option("--synthetic", sweep_o.synthetic, "rows,dim,density,tail (knn task)");
  sweep->add_option("--data-seed", sweep_o.data_seed, "Synthetic data seed");
  sweep->add_option("--kappa", sweep_o.kappa, "Neighbors retrieved (knn task)");
  sweep->add_option("--queries", sweep_o.queries, "Query count (knn task)");
  sweep->add_option("--query-seed", sweep_o.query_seed, "Query sampling seed");
  sweep->add_option("--k", sweep_o.k, "Sketch size");
  sweep->add_option("--seed", sweep_o.seed, "Sketch seed");
  sweep->add_option("--pool-seed", sweep_o.pool_seed, "Base pool seed");
  sweep->add_option("--threads", sweep_o.threads, "Worker threads");
  sweep->add_option("--out", sweep_o.out, "CSV path (stdout when omitted)");
  sweep->callback([&] { cmd_pool_sweep(sweep_o); });

  SketchOpts sketch_o;
  auto* sketch = app.add_subcommand("sketch", "Sketch a corpus into a binary sketch file");
  sketch->add_option("--scheme", sketch_o.scheme, "icws, icws0, or scws");
  sketch->add_option("--k", sketch_o.k, "Sketch size");
  sketch->add_option("--seed", sketch_o.seed, "Sketch seed (ICWS variants)");
  sketch->add_option("--pool-seed", sketch_o.pool_seed, "Pool seed (SCWS)");
  sketch->add_option("--pool-size", sketch_o.pool_size, "Pool size (SCWS)");
  sketch->add_option("--pool", sketch_o.pool_file, "Load the pool from a snapshot file");
  sketch->add_option("--save-pool", sketch_o.save_pool_path, "Also write the pool snapshot here");
  sketch->add_option("--data-seed", sketch_o.data_seed, "Synthetic data seed");
  sketch->add_option("--threads", sketch_o.threads, "Worker threads");
  sketch->add_option("--input", sketch_o.input, "LIBSVM corpus");
  sketch->add_option("--synthetic", sketch_o.synthetic, "rows,dim,density,tail corpus spec");
  sketch->add_flag("--rescale", sketch_o.rescale, "Rescale weights to (0,1] per feature");
  sketch->add_option("--out", sketch_o.out, "Output sketch file")->required();
  sketch->callback([&] { cmd_sketch(sketch_o); });

  VectorizeOpts vec_o;
  auto* vec = app.add_subcommand("vectorize", "Expand 0-bit sketches into b-bit one-hot features");
  vec->add_option("--input", vec_o.input, "Sketch file")->required();
  vec->add_option("--b", vec_o.b, "Bits per hash slot (1-16)");
  vec->add_flag("--normalize", vec_o.normalize, "Emit 1/sqrt(K) instead of 1");
  vec->add_option("--labels", vec_o.labels, "LIBSVM file supplying row labels");
  vec->add_option("--out", vec_o.out, "Output LIBSVM feature file")->required();
  vec->callback([&] { cmd_vectorize(vec_o); });

  KnnOpts knn_o;
  auto* knn = app.add_subcommand("knn", "Precision@kappa of sketch retrieval vs exact WJS");
  knn->add_option("--scheme", knn_o.scheme, "icws, icws0, or scws");
  knn->add_option("--k", knn_o.k, "Sketch size");
  knn->add_option("--kappa", knn_o.kappa, "Neighbors retrieved");
  knn->add_option("--queries", knn_o.queries, "Query rows sampled from the corpus");
  knn->add_option("--seed", knn_o.seed, "Sketch seed");
  knn->add_option("--query-seed", knn_o.query_seed, "Query sampling seed");
  knn->add_option("--pool-seed", knn_o.pool_seed, "Pool seed (SCWS)");
  knn->add_option("--pool-size", knn_o.pool_size, "Pool size (SCWS)");
  knn->add_option("--data-seed", knn_o.data_seed, "Synthetic data seed");
  knn->add_option("--threads", knn_o.threads, "Worker threads");
  knn->add_option("--input", knn_o.input, "LIBSVM corpus");
  knn->add_option("--synthetic", knn_o.synthetic, "rows,dim,density,tail corpus spec");
  knn->add_flag("--rescale", knn_o.rescale, "Rescale weights to (0,1] per feature");
  knn->add_option("--out", knn_o.out, "CSV path (stdout when omitted)");
  knn->callback([&] { cmd_knn(knn_o); });

  EstimateOpts est_o;
  auto* est = app.add_subcommand("estimate", "Row-aligned similarity estimates of two sketch files");
  est->add_option("--a", est_o.a, "First sketch file")->required();
  est->add_option("--b", est_o.b, "Second sketch file")->required();
  est->add_option("--out", est_o.out, "Per-row CSV path");
  est->callback([&] { cmd_estimate(est_o); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const wjs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
