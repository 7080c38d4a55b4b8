#include "wjsketch/weighted_set.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace wjs {

namespace {

void check_weight(FeatureId id, double w) {
  if (!std::isfinite(w)) fail(Errc::NonFiniteWeight, "feature " + std::to_string(id));
  if (w < 0.0) fail(Errc::NegativeWeight, "feature " + std::to_string(id));
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

WeightedSet WeightedSet::from_pairs(const std::vector<std::pair<FeatureId, double>>& pairs) {
  WeightedSet s;
  s.entries_.reserve(pairs.size());
  for (const auto& [id, w] : pairs) {
    check_weight(id, w);
    if (w == 0.0) continue;  // zero weight means "absent"
    s.entries_.push_back({id, w});
  }
  std::sort(s.entries_.begin(), s.entries_.end(),
            [](const Entry& a, const Entry& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < s.entries_.size(); ++i) {
    if (s.entries_[i].id == s.entries_[i - 1].id)
      fail(Errc::DuplicateFeature, "feature " + std::to_string(s.entries_[i].id));
  }
  return s;
}

double WeightedSet::weight_of(FeatureId id) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                             [](const Entry& e, FeatureId v) { return e.id < v; });
  if (it != entries_.end() && it->id == id) return it->weight;
  return 0.0;
}

double WeightedSet::total_weight() const {
  double sum = 0.0;
  for (const Entry& e : entries_) sum += e.weight;
  return sum;
}

WeightedSet WeightedSet::scaled(double alpha) const {
  if (!std::isfinite(alpha) || alpha <= 0.0)
    fail(Errc::InvalidArgument, "scale factor must be finite and > 0");
  WeightedSet out = *this;
  for (Entry& e : out.entries_) e.weight *= alpha;
  return out;
}

WeightedSet elementwise_max(const WeightedSet& a, const WeightedSet& b) {
  WeightedSet out;
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  std::size_t i = 0, j = 0;
  std::vector<Entry> merged;
  merged.reserve(ea.size() + eb.size());
  while (i < ea.size() || j < eb.size()) {
    if (j == eb.size() || (i < ea.size() && ea[i].id < eb[j].id)) {
      merged.push_back(ea[i++]);
    } else if (i == ea.size() || eb[j].id < ea[i].id) {
      merged.push_back(eb[j++]);
    } else {
      merged.push_back({ea[i].id, std::max(ea[i].weight, eb[j].weight)});
      ++i, ++j;
    }
  }
  std::vector<std::pair<FeatureId, double>> pairs;
  pairs.reserve(merged.size());
  for (const Entry& e : merged) pairs.emplace_back(e.id, e.weight);
  return WeightedSet::from_pairs(pairs);
}

namespace {

std::string_view strip_comment_and_trailing_ws(std::string_view line) {
  if (auto pos = line.find('#'); pos != std::string_view::npos) line = line.substr(0, pos);
  while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r' ||
                           line.back() == '\n'))
    line.remove_suffix(1);
  return line;
}

std::string_view next_token(std::string_view& rest) {
  while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) rest.remove_prefix(1);
  std::size_t end = 0;
  while (end < rest.size() && rest[end] != ' ' && rest[end] != '\t') ++end;
  std::string_view tok = rest.substr(0, end);
  rest.remove_prefix(end);
  return tok;
}

long long parse_label(std::string_view tok, std::string_view line) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  long long label = 0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), label);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    fail(Errc::MalformedLine, "bad label in: " + std::string(line));
  return label;
}

}  // namespace

std::pair<long long, WeightedSet> parse_libsvm_line(std::string_view line) {
  std::string_view rest = strip_comment_and_trailing_ws(line);
  std::string_view label_tok = next_token(rest);
  if (label_tok.empty()) fail(Errc::MalformedLine, "missing label in: " + std::string(line));
  long long label = parse_label(label_tok, line);

  std::vector<std::pair<FeatureId, double>> pairs;
  FeatureId prev = 0;
  bool have_prev = false;
  for (;;) {
    std::string_view tok = next_token(rest);
    if (tok.empty()) break;
    auto colon = tok.find(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 == tok.size())
      fail(Errc::MalformedLine, "bad pair '" + std::string(tok) + "'");

    std::string_view idx_part = tok.substr(0, colon);
    std::uint64_t idx = 0;
    auto ires = std::from_chars(idx_part.data(), idx_part.data() + idx_part.size(), idx);
    if (ires.ec != std::errc{} || ires.ptr != idx_part.data() + idx_part.size() || idx == 0)
      fail(Errc::MalformedLine, "bad index '" + std::string(idx_part) + "'");
    if (have_prev && idx <= prev)
      fail(Errc::NonMonotonicIndex, "index " + std::to_string(idx) + " after " +
                                        std::to_string(prev));
    prev = idx;
    have_prev = true;

    std::string_view val_part = tok.substr(colon + 1);
    double val = 0.0;
    auto vres = std::from_chars(val_part.data(), val_part.data() + val_part.size(), val);
    if (vres.ec != std::errc{} || vres.ptr != val_part.data() + val_part.size())
      fail(Errc::MalformedLine, "bad value '" + std::string(val_part) + "'");
    check_weight(idx, val);
    if (val == 0.0) continue;
    pairs.emplace_back(idx, val);  // 1-based index kept as-is
  }
  return {label, WeightedSet::from_pairs(pairs)};
}

std::string to_libsvm_line(long long label, const WeightedSet& s) {
  // Indices are 1-based in this format, so id 0 has no representation.
  if (!s.empty() && s.entries().front().id == 0)
    fail(Errc::FormatError, "feature id 0 cannot be serialized (indices are 1-based)");
  std::string out = std::to_string(label);
  for (const Entry& e : s.entries()) {
    out += ' ';
    out += std::to_string(e.id);
    out += ':';
    out += format_double(e.weight);
  }
  return out;
}

Dataset read_libsvm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::IoError, "cannot open " + path);
  Dataset d;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view stripped = strip_comment_and_trailing_ws(line);
    std::string_view probe = stripped;
    if (next_token(probe).empty()) continue;  // blank or comment-only
    try {
      auto [label, row] = parse_libsvm_line(stripped);
      d.labels.push_back(label);
      d.rows.push_back(std::move(row));
    } catch (const Error& e) {
      fail(e.code(), path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return d;
}

Dataset rescale_unit(const Dataset& d) {
  if (d.rows.empty()) fail(Errc::EmptyDataset, "rescale_unit needs at least one row");
  Dataset out;
  out.labels = d.labels;
  out.feature_max.clear();
  for (const WeightedSet& row : d.rows) {
    for (const Entry& e : row.entries()) {
      auto [it, inserted] = out.feature_max.emplace(e.id, e.weight);
      if (!inserted && e.weight > it->second) it->second = e.weight;
    }
  }
  out.rows.reserve(d.rows.size());
  for (const WeightedSet& row : d.rows) {
    std::vector<std::pair<FeatureId, double>> pairs;
    pairs.reserve(row.size());
    for (const Entry& e : row.entries())
      pairs.emplace_back(e.id, e.weight / out.feature_max.at(e.id));
    out.rows.push_back(WeightedSet::from_pairs(pairs));
  }
  return out;
}

WeightedSet rescale_query(const WeightedSet& q, const Dataset& rescaled) {
  std::vector<std::pair<FeatureId, double>> pairs;
  pairs.reserve(q.size());
  for (const Entry& e : q.entries()) {
    auto it = rescaled.feature_max.find(e.id);
    double w = (it != rescaled.feature_max.end()) ? e.weight / it->second : e.weight;
    pairs.emplace_back(e.id, w);
  }
  return WeightedSet::from_pairs(pairs);
}

}  // namespace wjs
