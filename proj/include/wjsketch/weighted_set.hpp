#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wjsketch/error.hpp"

namespace wjs {

using FeatureId = std::uint64_t;

struct Entry {
  FeatureId id = 0;
  double weight = 0.0;

  friend bool operator==(const Entry&, const Entry&) = default;
};

// Sparse weighted set with strictly positive, finite weights. Entries are kept
// sorted by id so every downstream operation is independent of input order.
class WeightedSet {
 public:
  WeightedSet() = default;

  // Zero-valued pairs encode absence and are dropped; duplicate ids, negative
  // or non-finite values are hard errors.
  static WeightedSet from_pairs(const std::vector<std::pair<FeatureId, double>>& pairs);

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }

  double weight_of(FeatureId id) const;  // 0 when absent
  double total_weight() const;

  WeightedSet scaled(double alpha) const;  // every weight times alpha > 0

  friend bool operator==(const WeightedSet&, const WeightedSet&) = default;

 private:
  std::vector<Entry> entries_;  // sorted by id
};

// Per-feature maximum of two sets (absent weight reads as 0).
WeightedSet elementwise_max(const WeightedSet& a, const WeightedSet& b);

struct Dataset {
  std::vector<WeightedSet> rows;
  std::vector<long long> labels;                      // one per row (0 when unlabeled)
  std::unordered_map<FeatureId, double> feature_max;  // filled by rescale_unit
};

// LIBSVM sparse text line: "<label> <idx>:<val> ...", 1-based strictly
// increasing indices, '#' starts a comment running to end of line.
std::pair<long long, WeightedSet> parse_libsvm_line(std::string_view line);
std::string to_libsvm_line(long long label, const WeightedSet& s);

// Reads a whole file; blank and comment-only lines are skipped. Rows that
// parse to empty sets are kept (callers that sketch must filter them).
Dataset read_libsvm_file(const std::string& path);

// Divides every weight by its feature's maximum over the whole dataset and
// records that maximum, leaving all weights in (0, 1]. Idempotent.
Dataset rescale_unit(const Dataset& d);

// Rescales a query against a dataset's recorded feature_max; features the
// dataset never saw keep their original weight.
WeightedSet rescale_query(const WeightedSet& q, const Dataset& rescaled);

// Shortest round-trip decimal form of a double (also used by the CSV writers
// so deterministic outputs are byte-stable).
std::string format_double(double v);

}  // namespace wjs
