#include "wjsketch/vectorizer.hpp"

#include <cmath>
#include <ostream>

namespace wjs {

BBitVector vectorize(const Sketch& s, std::uint32_t b) {
  if (b < 1 || b > 16) fail(Errc::InvalidBits, "b must be in [1, 16]");
  const Sketch* zero_bit = &s;
  Sketch projected;
  switch (s.scheme) {
    case Scheme::Icws:
      projected = to_zero_bit(s);
      zero_bit = &projected;
      break;
    case Scheme::Icws0:
    case Scheme::Scws:
      break;
    default:
      fail(Errc::WrongScheme, "sketch scheme is not vectorizable");
  }
  const std::uint64_t mask = (std::uint64_t{1} << b) - 1;
  BBitVector v;
  v.b = b;
  v.indices.resize(zero_bit->ids.size());
  for (std::size_t k = 0; k < zero_bit->ids.size(); ++k)
    v.indices[k] = (static_cast<std::uint64_t>(k) << b) + (mix64(zero_bit->ids[k]) & mask);
  return v;
}

std::uint64_t bbit_dot(const BBitVector& x, const BBitVector& y) {
  if (x.b != y.b) fail(Errc::InvalidBits, "mismatched b");
  if (x.k() != y.k()) fail(Errc::LengthMismatch, "mismatched slot counts");
  std::uint64_t dot = 0;
  for (std::size_t k = 0; k < x.indices.size(); ++k) dot += x.indices[k] == y.indices[k];
  return dot;
}

void write_bbit_libsvm(std::ostream& out, long long label, const BBitVector& v, bool normalize) {
  out << label;
  const std::string value =
      normalize ? format_double(1.0 / std::sqrt(static_cast<double>(v.k()))) : std::string("1");
  for (std::uint64_t idx : v.indices) out << ' ' << (idx + 1) << ':' << value;
  out << '\n';
}

std::string bbit_header_comment(const Sketch& reference, std::uint32_t b) {
  std::string line = "# bbit-vectors scheme=";
  line += scheme_name(reference.scheme);
  line += " K=" + std::to_string(reference.k());
  line += " b=" + std::to_string(b);
  line += " dimension=" + std::to_string(static_cast<std::uint64_t>(reference.k()) << b);
  if (reference.pool) {
    const PoolFingerprint& fp = *reference.pool;
    line += " pool_seed=" + std::to_string(fp.seed);
    line += " pool_size=" + std::to_string(fp.size);
    line += " p1=" + std::to_string(fp.p1);
    line += " p2=" + std::to_string(fp.p2);
    line += fp.single_precision ? " pool_precision=f32" : " pool_precision=f64";
  }
  if (reference.base_seed) line += " seed=" + std::to_string(*reference.base_seed);
  return line;
}

}  // namespace wjs
