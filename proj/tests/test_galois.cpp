#include <doctest.h>

#include <set>

#include "graphrepair/errors.hpp"
#include "graphrepair/galois.hpp"
#include "graphrepair/random.hpp"

using namespace graphrepair;

TEST_CASE("table multiplication agrees with carry-less multiplication on all of GF(256)") {
  const Field f = Field::gf256();
  for (std::uint32_t a = 0; a < 256; ++a)
    for (std::uint32_t b = 0; b < 256; ++b) REQUIRE(f.mul({a}, {b}) == f.mul_slow({a}, {b}));
}

TEST_CASE("table multiplication agrees with carry-less multiplication on GF(65536) samples") {
  const Field f = Field::gf65536();
  Rng rng(11);
  for (int i = 0; i < 20000; ++i) {
    const FieldElement a{static_cast<std::uint32_t>(rng.below(65536))};
    const FieldElement b{static_cast<std::uint32_t>(rng.below(65536))};
    REQUIRE(f.mul(a, b) == f.mul_slow(a, b));
  }
}

TEST_CASE("alpha generates the multiplicative group") {
  for (unsigned m : {8u, 16u}) {
    const Field f = Field::of_degree(m);
    std::set<std::uint32_t> seen;
    FieldElement x = f.one();
    for (std::uint32_t i = 0; i < f.group_order(); ++i) {
      seen.insert(x.value);
      x = f.mul_slow(x, f.alpha());
    }
    CHECK(x == f.one());
    CHECK(seen.size() == f.group_order());
    CHECK(f.alpha_pow(f.group_order() + 5) == f.alpha_pow(5));
  }
}

TEST_CASE("inverse, division and powers") {
  const Field f = Field::gf256();
  for (std::uint32_t a = 1; a < 256; ++a) {
    CHECK(f.mul({a}, f.inv({a})) == f.one());
    CHECK(f.div({a}, {a}) == f.one());
  }
  CHECK_THROWS_AS(f.inv(f.zero()), DivisionByZero);
  FieldElement acc = f.one();
  const FieldElement base{0x53};
  for (std::uint64_t e = 0; e < 600; ++e) {
    REQUIRE(f.pow(base, e) == acc);
    acc = f.mul_slow(acc, base);
  }
  CHECK(f.pow(f.zero(), 0) == f.one());
  CHECK(f.pow(f.zero(), 3) == f.zero());
}

TEST_CASE("unsupported degrees and oversized elements are rejected") {
  CHECK_THROWS_AS(Field::of_degree(7), ParameterError);
  CHECK_THROWS_AS(Field::gf256().element(256), ParameterError);
}

TEST_CASE("matrix inverse round trip and singular detection") {
  const Field f = Field::gf256();
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix a(5, 5);
    for (std::size_t r = 0; r < 5; ++r)
      for (std::size_t c = 0; c < 5; ++c) a(r, c) = {static_cast<std::uint32_t>(rng.below(256))};
    if (rank(f, a) < 5) {
      CHECK_THROWS_AS(inverse(f, a), SingularMatrix);
      continue;
    }
    CHECK(multiply(f, a, inverse(f, a)) == Matrix::identity(5));
    CHECK(multiply(f, inverse(f, a), a) == Matrix::identity(5));
  }
  Matrix s(3, 3);
  s(0, 0) = f.one();
  s(1, 1) = f.one();
  CHECK(rank(f, s) == 2);
  CHECK_THROWS_AS(inverse(f, s), SingularMatrix);
  CHECK_THROWS_AS(inverse(f, Matrix(2, 3)), DimensionMismatch);
  CHECK_THROWS_AS(multiply(f, Matrix(2, 3), Matrix(2, 3)), DimensionMismatch);
}

TEST_CASE("vandermonde on distinct points has full rank") {
  const Field f = Field::gf256();
  std::vector<FieldElement> pts;
  for (int i = 0; i < 6; ++i) pts.push_back(f.alpha_pow(i));
  const Matrix v = vandermonde(f, pts, 6);
  CHECK(rank(f, v) == 6);
  CHECK(v(0, 3) == f.one());
  CHECK(v(2, 3) == f.mul_slow(pts[3], pts[3]));
  pts[5] = pts[0];
  CHECK(rank(f, vandermonde(f, pts, 6)) == 5);
}
