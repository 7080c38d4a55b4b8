#include "wjsketch/pool.hpp"

#include <cmath>
#include <fstream>

#include "wjsketch/detail/binio.hpp"

namespace wjs {

double gamma21(SplitMix64& rng) {
  return -std::log(rng.next_unit_open()) - std::log(rng.next_unit_open());
}

SamplePool SamplePool::build(std::uint64_t size, std::uint64_t seed, bool single_precision) {
  if (size == 0) fail(Errc::ZeroSize, "pool size must be >= 1");
  SamplePool pool;
  pool.values_.resize(size);
  SplitMix64 rng(seed);
  for (std::uint64_t i = 0; i < size; ++i) {
    double r = gamma21(rng);
    double c = gamma21(rng);
    double v = c * std::exp(-r);
    if (single_precision) v = static_cast<double>(static_cast<float>(v));
    pool.values_[i] = v;
  }
  pool.fp_ = {seed, size, kPoolPrime1, kPoolPrime2, single_precision};
  return pool;
}

SamplePool SamplePool::from_values(std::vector<double> values) {
  if (values.empty()) fail(Errc::ZeroSize, "pool size must be >= 1");
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v))
      fail(Errc::InvalidArgument, "pool values must be finite and > 0");
  }
  SamplePool pool;
  pool.values_ = std::move(values);
  pool.fp_ = {0, pool.values_.size(), kPoolPrime1, kPoolPrime2, false};
  return pool;
}

std::uint64_t pool_index(FeatureId z, std::uint64_t k, const SamplePool& pool) {
  if (pool.size() == 0) fail(Errc::EmptyPool, "pool_index on empty pool");
  // Unsigned multiplication and addition wrap mod 2^64 by definition.
  return (z * pool.p1() + k * pool.p2()) % pool.size();
}

namespace {
constexpr char kPoolMagic[9] = "WJSPOOL\0";
constexpr std::uint32_t kPoolVersion = 1;
}  // namespace

void save_pool(const std::string& path, const SamplePool& pool) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot write " + path);
  detail::write_magic(out, kPoolMagic);
  detail::write_le<std::uint32_t>(out, kPoolVersion);
  detail::write_le<std::uint32_t>(out, pool.single_precision() ? 1u : 0u);
  detail::write_le<std::uint64_t>(out, pool.size());
  detail::write_le<std::uint64_t>(out, pool.seed());
  detail::write_le<std::uint64_t>(out, pool.p1());
  detail::write_le<std::uint64_t>(out, pool.p2());
  for (double v : pool.values()) {
    if (pool.single_precision())
      detail::write_le<float>(out, static_cast<float>(v));  // exact: v was rounded at build
    else
      detail::write_le<double>(out, v);
  }
  if (!out) fail(Errc::IoError, "short write to " + path);
}

SamplePool load_pool(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open " + path);
  detail::expect_magic(in, kPoolMagic, "pool snapshot");
  auto version = detail::read_le<std::uint32_t>(in);
  if (version != kPoolVersion)
    fail(Errc::FormatError, "unsupported pool snapshot version " + std::to_string(version));
  bool single = detail::read_le<std::uint32_t>(in) & 1u;
  auto size = detail::read_le<std::uint64_t>(in);
  auto seed = detail::read_le<std::uint64_t>(in);
  auto p1 = detail::read_le<std::uint64_t>(in);
  auto p2 = detail::read_le<std::uint64_t>(in);
  if (size == 0) fail(Errc::FormatError, "pool snapshot with zero size");

  SamplePool pool;
  pool.values_.resize(size);
  for (auto& v : pool.values_)
    v = single ? static_cast<double>(detail::read_le<float>(in)) : detail::read_le<double>(in);
  for (double v : pool.values_) {
    if (!(v > 0.0) || !std::isfinite(v))
      fail(Errc::FormatError, "pool snapshot holds a non-positive value");
  }
  pool.fp_ = {seed, size, p1, p2, single};
  return pool;
}

}  // namespace wjs
