#include <cmath>
#include <sstream>

#include "doctest.h"
#include "wjsketch/estimator.hpp"
#include "wjsketch/synthetic.hpp"
#include "wjsketch/vectorizer.hpp"

using namespace wjs;

namespace {

Sketch id_sketch(std::vector<FeatureId> ids) {
  return Sketch{Scheme::Icws0, {}, std::move(ids), 42, std::nullopt};
}

}  // namespace

TEST_SUITE("vectorizer") {

TEST_CASE("slot indices use the mixed id's low bits") {
  // mix64(1) is odd, mix64(2) is even, so at b=1 they land on opposite sides.
  BBitVector one = vectorize(id_sketch({1}), 1);
  REQUIRE(one.k() == 1);
  CHECK(one.dimension() == 2);
  CHECK(one.indices[0] == 1);
  BBitVector two = vectorize(id_sketch({2}), 1);
  CHECK(two.indices[0] == 0);

  // Second slot is offset by 2^b regardless of the id.
  BBitVector both = vectorize(id_sketch({1, 1}), 1);
  CHECK(both.indices[0] == 1);
  CHECK(both.indices[1] == 2 + 1);

  // At b=8 the slot offset is mix64(id) mod 256.
  BBitVector wide = vectorize(id_sketch({1, 2}), 8);
  CHECK(wide.indices[0] == 229);        // mix64(1) & 0xff
  CHECK(wide.indices[1] == 256 + 138);  // mix64(2) & 0xff
}

TEST_CASE("every slot holds exactly one index in range") {
  Dataset d = make_synthetic_corpus({20, 100, 0.2, 1.5}, 17);
  SketchConfig cfg{Scheme::Icws0, 4096, 42, nullptr};
  Sketch s = build_sketch(d.rows[0], cfg);
  BBitVector v = vectorize(s, 8);
  CHECK(v.k() == 4096);
  CHECK(v.dimension() == 4096ull << 8);
  CHECK(v.dimension() == 1048576);
  for (std::size_t k = 0; k < v.k(); ++k) {
    CHECK(v.indices[k] >= static_cast<std::uint64_t>(k) << 8);
    CHECK(v.indices[k] < static_cast<std::uint64_t>(k + 1) << 8);
  }
}

TEST_CASE("b is clamped to a sane range") {
  Sketch s = id_sketch({1, 2});
  CHECK_THROWS_AS(vectorize(s, 0), Error);
  CHECK_THROWS_AS(vectorize(s, 17), Error);
  CHECK(vectorize(s, 16).dimension() == 2ull << 16);
  try {
    vectorize(s, 0);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidBits);
  }
}

TEST_CASE("full icws sketches are projected before vectorizing") {
  WeightedSet w = WeightedSet::from_pairs({{1, 0.5}, {2, 2.0}, {10, 1.0}});
  Sketch full = build_sketch(w, {Scheme::Icws, 32, 42, nullptr});
  Sketch zero = to_zero_bit(full);
  for (std::uint32_t b : {1u, 4u, 8u}) {
    BBitVector vf = vectorize(full, b);
    BBitVector vz = vectorize(zero, b);
    CHECK(vf.indices == vz.indices);
  }
}

TEST_CASE("dot of matching sketches counts agreements plus collisions") {
  // Disjoint ids never collide on the id itself; only the b-bit truncation can.
  auto [a, b] = make_synthetic_pair(100, 50, 1.5, 23);
  SketchConfig cfg{Scheme::Icws0, 2048, 42, nullptr};
  Sketch sa = build_sketch(a, cfg);
  Sketch sb = build_sketch(b, cfg);
  std::vector<std::uint8_t> ind = match_indicators(sa, sb);

  for (std::uint32_t bits : {1u, 8u}) {
    CAPTURE(bits);
    BBitVector va = vectorize(sa, bits);
    BBitVector vb = vectorize(sb, bits);
    std::uint64_t dot = bbit_dot(va, vb);
    std::uint64_t matches = 0;
    std::uint64_t mismatches = 0;
    for (auto m : ind) m ? ++matches : ++mismatches;
    // Exact matches always coincide after truncation.
    CHECK(dot >= matches);
    // Mismatches collide at rate ~2^-b; allow 4 sigma around the mean.
    double p = std::pow(2.0, -static_cast<double>(bits));
    double mean = static_cast<double>(mismatches) * p;
    double sigma = std::sqrt(static_cast<double>(mismatches) * p * (1.0 - p));
    double excess = static_cast<double>(dot - matches);
    CHECK(excess >= mean - 4.0 * sigma - 1.0);
    CHECK(excess <= mean + 4.0 * sigma + 1.0);
  }
}

TEST_CASE("dot is symmetric and bounded by K") {
  auto [a, b] = make_synthetic_pair(60, 30, 1.5, 29);
  SketchConfig cfg{Scheme::Icws0, 256, 42, nullptr};
  BBitVector va = vectorize(build_sketch(a, cfg), 4);
  BBitVector vb = vectorize(build_sketch(b, cfg), 4);
  CHECK(bbit_dot(va, vb) == bbit_dot(vb, va));
  CHECK(bbit_dot(va, va) == 256);
  CHECK(bbit_dot(va, vb) <= 256);
  BBitVector short_v = vectorize(id_sketch({1}), 4);
  CHECK_THROWS_AS(bbit_dot(va, short_v), Error);
  BBitVector other_b = vectorize(build_sketch(a, cfg), 5);
  CHECK_THROWS_AS(bbit_dot(va, other_b), Error);
}

TEST_CASE("libsvm emission is 1-based and parseable") {
  BBitVector v = vectorize(id_sketch({1, 2}), 8);
  std::ostringstream out;
  write_bbit_libsvm(out, 3, v, false);
  CHECK(out.str() == "3 230:1 395:1\n");  // indices 229 and 256+138, shifted to 1-based

  auto [label, parsed] = parse_libsvm_line("3 230:1 395:1");
  CHECK(label == 3);
  CHECK(parsed.weight_of(230) == 1.0);
  CHECK(parsed.weight_of(395) == 1.0);

  std::ostringstream norm;
  write_bbit_libsvm(norm, -1, v, true);
  auto [nlabel, nparsed] = parse_libsvm_line(norm.str());
  CHECK(nlabel == -1);
  CHECK(nparsed.weight_of(230) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("header comment carries the vectorization parameters") {
  SamplePool pool = SamplePool::build(kDefaultPoolSize);
  WeightedSet w = WeightedSet::from_pairs({{1, 0.5}, {2, 2.0}});
  Sketch s = build_sketch(w, {Scheme::Scws, 16, 0, &pool});
  std::string header = bbit_header_comment(s, 8);
  CHECK(header.rfind("# ", 0) == 0);
  CHECK(header.find("scheme=scws") != std::string::npos);
  CHECK(header.find("K=16") != std::string::npos);
  CHECK(header.find("b=8") != std::string::npos);
  CHECK(header.find("dimension=4096") != std::string::npos);
  CHECK(header.find("pool_seed=") != std::string::npos);

  Sketch z = build_sketch(w, {Scheme::Icws0, 16, 42, nullptr});
  std::string zheader = bbit_header_comment(z, 4);
  CHECK(zheader.find("scheme=icws0") != std::string::npos);
  CHECK(zheader.find("seed=42") != std::string::npos);
}

}  // TEST_SUITE
