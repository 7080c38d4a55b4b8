#pragma once

#include <iosfwd>

#include "wjsketch/sketch.hpp"

namespace wjs {

// Sparse one-hot-per-slot binary vector: slot k of a K-hash sketch owns the
// index range [k*2^b, (k+1)*2^b) and carries exactly one 1.
struct BBitVector {
  std::uint32_t b = 1;
  std::vector<std::uint64_t> indices;  // indices[k] in slot k's range

  std::size_t k() const { return indices.size(); }
  std::uint64_t dimension() const { return static_cast<std::uint64_t>(indices.size()) << b; }
};

// Slot k maps to k*2^b + (mix64(z*_k) mod 2^b). Ids are avalanche-mixed before
// truncation because raw low bits correlate with feature numbering; mixing
// restores the uniform 2^-b collision rate the b-bit analysis assumes.
// Full ICWS sketches are projected to 0-bit (t dropped) first.
BBitVector vectorize(const Sketch& s, std::uint32_t b);

// Inner product of two b-bit vectors. Slots are disjoint, so this is the count
// of positions whose indices coincide.
std::uint64_t bbit_dot(const BBitVector& x, const BBitVector& y);

// One LIBSVM-format line, 1-based indices, value 1 (or 1/sqrt(K) when
// normalized).
void write_bbit_libsvm(std::ostream& out, long long label, const BBitVector& v,
                       bool normalize = false);

// Header comment recording the vectorization provenance.
std::string bbit_header_comment(const Sketch& reference, std::uint32_t b);

}  // namespace wjs
