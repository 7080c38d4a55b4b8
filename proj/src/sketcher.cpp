#include "wjsketch/sketch.hpp"

#include <cmath>
#include <fstream>

#include "wjsketch/detail/binio.hpp"
#include "wjsketch/parallel.hpp"

namespace wjs {

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Icws: return "icws";
    case Scheme::Icws0: return "icws0";
    case Scheme::Scws: return "scws";
  }
  return "unknown";
}

std::optional<Scheme> scheme_from_name(std::string_view name) {
  if (name == "icws") return Scheme::Icws;
  if (name == "icws0") return Scheme::Icws0;
  if (name == "scws") return Scheme::Scws;
  return std::nullopt;
}

IcwsHash icws_minhash(const WeightedSet& s, std::uint64_t k, std::uint64_t base_seed) {
  return detail::icws_minhash_with(
      s, k, [base_seed](FeatureId z, std::uint64_t kk) { return detail::icws_draw(base_seed, z, kk); });
}

FeatureId icws0_minhash(const WeightedSet& s, std::uint64_t k, std::uint64_t base_seed) {
  return icws_minhash(s, k, base_seed).z_star;
}

FeatureId scws_minhash(const WeightedSet& s, std::uint64_t k, const SamplePool& pool) {
  if (s.empty()) fail(Errc::EmptySet, "cannot minhash an empty set");
  if (pool.size() == 0) fail(Errc::EmptyPool, "cannot minhash with an empty pool");
  FeatureId best = 0;
  double best_a = std::numeric_limits<double>::infinity();
  for (const Entry& e : s.entries()) {
    // Same two operations as the batched builder (reciprocal then multiply)
    // so both paths agree bit-for-bit.
    double a = (1.0 / e.weight) * pool.value(pool_index(e.id, k, pool));
    if (a < best_a) {
      best_a = a;
      best = e.id;
    }
  }
  return best;
}

namespace {

void check_config(const WeightedSet& s, const SketchConfig& cfg) {
  if (s.empty()) fail(Errc::EmptySet, "cannot sketch an empty set");
  if (cfg.k == 0) fail(Errc::InvalidArgument, "sketch size K must be >= 1");
  if (cfg.scheme == Scheme::Scws) {
    if (cfg.pool == nullptr || cfg.pool->size() == 0)
      fail(Errc::EmptyPool, "SCWS config needs a nonempty pool");
  }
}

void build_icws(const WeightedSet& s, const SketchConfig& cfg, Sketch& out) {
  const auto& entries = s.entries();
  const std::size_t n = entries.size();
  std::vector<double> logw(n);  // K hashes reuse each entry's log weight
  for (std::size_t i = 0; i < n; ++i) logw[i] = std::log(entries[i].weight);

  out.tuples.resize(cfg.k);
  for (std::uint64_t k = 0; k < cfg.k; ++k) {
    IcwsHash best{};
    double best_a = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      detail::IcwsDraw d = detail::icws_draw(cfg.base_seed, entries[i].id, k);
      std::int64_t t = 0;
      double a = detail::icws_alpha(logw[i], d, t);
      if (a < best_a) {
        best_a = a;
        best = {entries[i].id, t};
      }
    }
    out.tuples[k] = best;
  }
}

void build_scws(const WeightedSet& s, const SketchConfig& cfg, Sketch& out) {
  const SamplePool& pool = *cfg.pool;
  const auto& entries = s.entries();
  const std::size_t n = entries.size();
  const std::uint64_t size = pool.size();
  const double* values = pool.values().data();

  // Residue arithmetic keeps the inner loop free of integer division while
  // reproducing (z*p1 + k*p2) wrapped mod 2^64 then reduced mod |T| exactly:
  // when the 64-bit sum carries, the true value drops by 2^64, i.e. by
  // 2^64 mod |T| after reduction, which `carry_adj` adds back.
  const std::uint64_t carry_adj = (size - (std::numeric_limits<std::uint64_t>::max() % size + 1) % size) % size;
  std::vector<double> inv_w(n);          // one multiply per (feature, hash) beyond index math
  std::vector<std::uint64_t> zp(n);      // z * p1 mod 2^64
  std::vector<std::uint64_t> zp_mod(n);  // (z * p1 mod 2^64) mod |T|
  for (std::size_t i = 0; i < n; ++i) {
    inv_w[i] = 1.0 / entries[i].weight;
    zp[i] = entries[i].id * pool.p1();
    zp_mod[i] = zp[i] % size;
  }

  out.ids.resize(cfg.k);
  for (std::uint64_t k = 0; k < cfg.k; ++k) {
    const std::uint64_t kp = k * pool.p2();
    const std::uint64_t kp_mod = kp % size;
    FeatureId best = 0;
    double best_a = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const bool carry = zp[i] + kp < zp[i];
      std::uint64_t idx = zp_mod[i] + kp_mod + (carry ? carry_adj : 0);
      if (idx >= size) idx -= size;
      if (idx >= size) idx -= size;
      const double a = inv_w[i] * values[idx];
      if (a < best_a) {
        best_a = a;
        best = entries[i].id;
      }
    }
    out.ids[k] = best;
  }
}

}  // namespace

Sketch build_sketch(const WeightedSet& s, const SketchConfig& cfg) {
  check_config(s, cfg);
  Sketch out;
  out.scheme = cfg.scheme;
  switch (cfg.scheme) {
    case Scheme::Icws:
      out.base_seed = cfg.base_seed;
      build_icws(s, cfg, out);
      break;
    case Scheme::Icws0: {
      out.base_seed = cfg.base_seed;
      Sketch full;
      build_icws(s, cfg, full);
      out.ids.resize(cfg.k);
      for (std::size_t k = 0; k < cfg.k; ++k) out.ids[k] = full.tuples[k].z_star;
      break;
    }
    case Scheme::Scws:
      out.pool = cfg.pool->fingerprint();
      build_scws(s, cfg, out);
      break;
  }
  return out;
}

std::vector<Sketch> sketch_corpus(const std::vector<WeightedSet>& rows, const SketchConfig& cfg,
                                  int threads) {
  std::vector<Sketch> out(rows.size());
  parallel_for(rows.size(), threads, [&](std::size_t i) { out[i] = build_sketch(rows[i], cfg); });
  return out;
}

Sketch to_zero_bit(const Sketch& s) {
  if (s.scheme != Scheme::Icws) return s;
  Sketch out;
  out.scheme = Scheme::Icws0;
  out.base_seed = s.base_seed;
  out.ids.resize(s.tuples.size());
  for (std::size_t k = 0; k < s.tuples.size(); ++k) out.ids[k] = s.tuples[k].z_star;
  return out;
}

namespace {
constexpr char kSketchMagic[9] = "WJSKETCH";
constexpr std::uint32_t kSketchVersion = 1;
}  // namespace

void save_sketches(const std::string& path, const std::vector<Sketch>& sketches) {
  if (sketches.empty()) fail(Errc::InvalidArgument, "refusing to write an empty sketch file");
  const Sketch& first = sketches.front();
  const std::size_t k = first.k();
  for (const Sketch& s : sketches) {
    if (s.scheme != first.scheme) fail(Errc::SchemeMismatch, "mixed schemes in one file");
    if (s.k() != k) fail(Errc::LengthMismatch, "mixed sketch sizes in one file");
    if (s.pool != first.pool) fail(Errc::PoolMismatch, "mixed pools in one file");
    if (s.base_seed != first.base_seed) fail(Errc::SeedMismatch, "mixed base seeds in one file");
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot write " + path);
  detail::write_magic(out, kSketchMagic);
  detail::write_le<std::uint32_t>(out, kSketchVersion);
  std::uint8_t flags = 0;
  if (first.scheme == Scheme::Scws && first.pool && first.pool->single_precision) flags |= 1;
  detail::write_le<std::uint8_t>(out, static_cast<std::uint8_t>(first.scheme));
  detail::write_le<std::uint8_t>(out, flags);
  detail::write_le<std::uint16_t>(out, 0);  // pad
  detail::write_le<std::uint64_t>(out, sketches.size());
  detail::write_le<std::uint64_t>(out, k);
  if (first.scheme == Scheme::Scws) {
    const PoolFingerprint& fp = *first.pool;
    detail::write_le<std::uint64_t>(out, fp.seed);
    detail::write_le<std::uint64_t>(out, fp.size);
    detail::write_le<std::uint64_t>(out, fp.p1);
    detail::write_le<std::uint64_t>(out, fp.p2);
  } else {
    detail::write_le<std::uint64_t>(out, first.base_seed.value_or(0));
  }
  for (const Sketch& s : sketches) {
    if (s.scheme == Scheme::Icws) {
      for (const IcwsHash& h : s.tuples) {
        detail::write_le<std::uint64_t>(out, h.z_star);
        detail::write_le<std::int64_t>(out, h.t_star);
      }
    } else {
      for (FeatureId id : s.ids) detail::write_le<std::uint64_t>(out, id);
    }
  }
  if (!out) fail(Errc::IoError, "short write to " + path);
}

std::vector<Sketch> load_sketches(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open " + path);
  detail::expect_magic(in, kSketchMagic, "sketch");
  auto version = detail::read_le<std::uint32_t>(in);
  if (version != kSketchVersion)
    fail(Errc::FormatError, "unsupported sketch file version " + std::to_string(version));
  auto scheme_tag = detail::read_le<std::uint8_t>(in);
  auto flags = detail::read_le<std::uint8_t>(in);
  detail::read_le<std::uint16_t>(in);  // pad
  if (scheme_tag > 2) fail(Errc::FormatError, "unknown scheme tag " + std::to_string(scheme_tag));
  Scheme scheme = static_cast<Scheme>(scheme_tag);
  auto count = detail::read_le<std::uint64_t>(in);
  auto k = detail::read_le<std::uint64_t>(in);
  if (k == 0) fail(Errc::FormatError, "sketch file with K = 0");

  std::optional<std::uint64_t> base_seed;
  std::optional<PoolFingerprint> pool;
  if (scheme == Scheme::Scws) {
    PoolFingerprint fp;
    fp.seed = detail::read_le<std::uint64_t>(in);
    fp.size = detail::read_le<std::uint64_t>(in);
    fp.p1 = detail::read_le<std::uint64_t>(in);
    fp.p2 = detail::read_le<std::uint64_t>(in);
    fp.single_precision = flags & 1;
    pool = fp;
  } else {
    base_seed = detail::read_le<std::uint64_t>(in);
  }

  std::vector<Sketch> sketches(count);
  for (Sketch& s : sketches) {
    s.scheme = scheme;
    s.base_seed = base_seed;
    s.pool = pool;
    if (scheme == Scheme::Icws) {
      s.tuples.resize(k);
      for (IcwsHash& h : s.tuples) {
        h.z_star = detail::read_le<std::uint64_t>(in);
        h.t_star = detail::read_le<std::int64_t>(in);
      }
    } else {
      s.ids.resize(k);
      for (FeatureId& id : s.ids) id = detail::read_le<std::uint64_t>(in);
    }
  }
  return sketches;
}

}  // namespace wjs
