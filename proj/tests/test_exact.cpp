#include <gtest/gtest.h>

#include <random>

#include "finepoly/linalg.hpp"
#include "finepoly/rational.hpp"
#include "oracles.hpp"

using namespace finepoly;
using finepoly::testing::ivec;
using finepoly::testing::permutation_det;

TEST(Rational, StoredInLowestTerms) {
  Rational r(Integer(6), Integer(-4));
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(r.str(), "-3/2");
  EXPECT_EQ(Rational(Integer(8), Integer(4)).str(), "2");
}

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(Rational::parse("10/4"), Rational(Integer(5), Integer(2)));
  EXPECT_EQ(Rational::parse(" -7 ").str(), "-7");
  EXPECT_EQ(Rational::parse("+3/9").str(), "1/3");
  EXPECT_EQ(Rational::parse("0/5").str(), "0");
  EXPECT_THROW(Rational::parse("1/0"), Error);
  EXPECT_THROW(Rational::parse("a/2"), Error);
  EXPECT_THROW(Rational::parse(""), Error);
  EXPECT_THROW(Rational::parse("1.5"), Error);
}

TEST(Rational, FloorCeilAndArithmetic) {
  Rational x = Rational::parse("-7/3");
  EXPECT_EQ(x.floor(), -3);
  EXPECT_EQ(x.ceil(), -2);
  EXPECT_EQ(Rational::parse("1/3") + Rational::parse("1/6"), Rational::parse("1/2"));
  EXPECT_EQ(Rational::parse("2/3") * Rational::parse("3/4"), Rational::parse("1/2"));
  EXPECT_EQ(Rational::parse("5/2").reciprocal(), Rational::parse("2/5"));
  EXPECT_THROW(Rational(0).reciprocal(), Error);
  Rational y(5);
  y.sub_mul(Rational(2), Rational(3));
  EXPECT_EQ(y, Rational(-1));
}

TEST(Primitive, Examples) {
  EXPECT_EQ(primitive(ivec({2, 4, 6})), ivec({1, 2, 3}));
  EXPECT_EQ(primitive(ivec({1, 0})), ivec({1, 0}));
  EXPECT_EQ(primitive(ivec({-5, 0, -10})), ivec({-1, 0, -2}));
}

TEST(Primitive, ZeroVectorIsAnError) {
  try {
    primitive(ivec({0, 0}));
    FAIL() << "expected ZeroVector";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ZeroVector);
  }
}

TEST(Primitive, InvariantUnderPositiveMultiples) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> entry(-9, 9), mult(1, 12);
  for (int trial = 0; trial < 200; ++trial) {
    QVector v = ivec({entry(rng), entry(rng), entry(rng)});
    if (is_zero(v)) continue;
    Rational k(mult(rng));
    EXPECT_EQ(primitive(k * v), primitive(v));
  }
}

TEST(Det, Examples) {
  EXPECT_EQ(det(QMatrix::identity(3)), Rational(1));
  QMatrix anti({ivec({0, 0, 1}), ivec({0, 1, 0}), ivec({1, 0, 0})});
  EXPECT_EQ(det(anti), Rational(-1));

  // [A_4 | -1]; the expected value comes from the permutation expansion.
  QMatrix a4({ivec({-1, -1, -1}), ivec({0, 0, 1}), ivec({0, 1, 0}), ivec({1, 0, 0})});
  QMatrix bordered = a4.with_column(ivec({-1, -1, -1, -1}));
  const Rational oracle = permutation_det(bordered);
  ASSERT_EQ(oracle, Rational(-4));
  EXPECT_EQ(det(bordered), oracle);
}

TEST(Det, NonSquareIsAnError) {
  QMatrix m(2, 3);
  EXPECT_THROW(det(m), Error);
}

TEST(Det, MatchesPermutationExpansionOnRandomMatrices) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> entry(-6, 6), size(1, 5), den(1, 4);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = static_cast<std::size_t>(size(rng));
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = Rational(Integer(entry(rng)), Integer(trial % 3 == 0 ? den(rng) : 1));
    EXPECT_EQ(det(m), permutation_det(m)) << "trial " << trial;
  }
}

TEST(Rref, NullspaceAndSolve) {
  QMatrix m({ivec({1, 2, 3}), ivec({2, 4, 6})});
  auto ns = nullspace(m);
  ASSERT_EQ(ns.size(), 2u);
  for (const auto& v : ns) EXPECT_TRUE(is_zero(m * v));
  auto x = solve_square(QMatrix({ivec({2, 1}), ivec({1, 3})}), ivec({3, 5}));
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)[0], Rational::parse("4/5"));
  EXPECT_EQ((*x)[1], Rational::parse("7/5"));
  EXPECT_FALSE(solve_square(QMatrix({ivec({1, 2}), ivec({2, 4})}), ivec({1, 1})).has_value());
}

TEST(Hermite, UnimodularTransformAndShape) {
  QMatrix a({ivec({4, 6}), ivec({6, 9}), ivec({2, 5})});
  HermiteForm hf = hermite_normal_form(a);
  EXPECT_EQ(hf.u * a, hf.h);
  EXPECT_EQ(det(hf.u).abs(), Rational(1));
  ASSERT_EQ(hf.pivots.size(), 2u);
  EXPECT_GT(hf.h(0, 0), Rational(0));
  EXPECT_GT(hf.h(1, 1), Rational(0));
  EXPECT_TRUE(hf.h(1, 0).is_zero());
  EXPECT_TRUE(is_zero(hf.h.row(2)));
  EXPECT_GE(hf.h(0, 1), Rational(0));
  EXPECT_LT(hf.h(0, 1), hf.h(1, 1));
}

TEST(KernelComplement, KillsSecondCoordinate) {
  QMatrix k({ivec({0}), ivec({1})});
  QMatrix pi = lattice_projection_killing(k);
  ASSERT_EQ(pi.rows(), 1u);
  // (x, y) -> +-x
  EXPECT_TRUE(pi(0, 1).is_zero());
  EXPECT_EQ(pi(0, 0).abs(), Rational(1));
}

TEST(KernelComplement, KillsDiagonal) {
  QMatrix k({ivec({1}), ivec({1})});
  QMatrix u = integer_kernel_complement(k);
  EXPECT_EQ(det(u).abs(), Rational(1));
  QMatrix pi = lattice_projection_killing(k);
  ASSERT_EQ(pi.rows(), 1u);
  EXPECT_TRUE(is_zero(pi * ivec({1, 1})));
  // Surjective onto Z: the row is primitive.
  EXPECT_EQ(gcd(pi(0, 0).num(), pi(0, 1).num()), 1);
}

TEST(KernelComplement, ZeroSpanGivesIdentity) {
  QMatrix k(2, 0);
  EXPECT_EQ(integer_kernel_complement(k), QMatrix::identity(2));
  QMatrix zero_col({ivec({0}), ivec({0})});
  EXPECT_EQ(lattice_projection_killing(zero_col).rows(), 2u);
}

TEST(KernelComplement, RandomUnimodularAndAnnihilating) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> entry(-4, 4), ncols(1, 2);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 4, k = static_cast<std::size_t>(ncols(rng));
    QMatrix K(n, k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j) K(i, j) = entry(rng);
    QMatrix u = integer_kernel_complement(K);
    EXPECT_EQ(det(u).abs(), Rational(1));
    QMatrix pi = lattice_projection_killing(K);
    EXPECT_EQ(pi.rows(), n - rank(K));
    for (std::size_t j = 0; j < k; ++j) EXPECT_TRUE(is_zero(pi * K.column(j)));
  }
}
