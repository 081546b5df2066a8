#include <gtest/gtest.h>

#include <random>

#include "finepoly/lp.hpp"
#include "oracles.hpp"

using namespace finepoly;
using finepoly::testing::ivec;
namespace L = finepoly::lp;

namespace {

L::Constraints unit_square() {
  L::Constraints c(2);
  c.add(ivec({1, 0}), 0);
  c.add(ivec({-1, 0}), -1);
  c.add(ivec({0, 1}), 0);
  c.add(ivec({0, -1}), -1);
  return c;
}

// Random bounded polytope: box rows plus random cuts through an interior point.
L::Constraints random_bounded(std::mt19937& rng, std::size_t d) {
  std::uniform_int_distribution<long> entry(-3, 3), width(1, 4), slack(0, 3);
  L::Constraints c(d);
  for (std::size_t k = 0; k < d; ++k) {
    c.add(unit_vector(d, k), Rational(-width(rng)));
    c.add(-unit_vector(d, k), Rational(-width(rng)));
  }
  for (int extra = 0; extra < 3; ++extra) {
    QVector a(d);
    for (auto& x : a) x = entry(rng);
    if (is_zero(a)) continue;
    c.add(a, Rational(-slack(rng)));  // origin stays feasible
  }
  return c;
}

}  // namespace

TEST(Lp, FineMountainOfStandardTriangle) {
  // Variables (x, y, s): x >= s, y >= s, -x - y >= -1 + s.
  L::Constraints c(3);
  c.add(ivec({1, 0, -1}), 0);
  c.add(ivec({0, 1, -1}), 0);
  c.add(ivec({-1, -1, -1}), -1);
  auto o = L::maximize(c, ivec({0, 0, 1}));
  ASSERT_EQ(o.status, L::Status::Optimal);
  EXPECT_EQ(o.value, Rational::parse("1/3"));
  QVector third(3, Rational::parse("1/3"));
  EXPECT_EQ(o.point, third);
}

TEST(Lp, Unbounded) {
  L::Constraints c(1);
  c.add(ivec({1}), 0);
  EXPECT_EQ(L::maximize(c, ivec({1})).status, L::Status::Unbounded);
}

TEST(Lp, Infeasible) {
  L::Constraints c(1);
  c.add(ivec({1}), 1);
  c.add(ivec({-1}), 0);
  EXPECT_EQ(L::maximize(c, ivec({1})).status, L::Status::Infeasible);
  EXPECT_FALSE(L::is_feasible(c));
}

TEST(Lp, EmptySystemAndZeroObjective) {
  L::Constraints c(2);
  EXPECT_EQ(L::maximize(c, ivec({0, 0})).status, L::Status::Optimal);
  EXPECT_EQ(L::maximize(c, ivec({1, 0})).status, L::Status::Unbounded);
}

TEST(Lp, OptimalPointAttainsValueAndIsFeasible) {
  L::Constraints c = unit_square();
  c.add(ivec({-1, -2}), -2);
  auto o = L::maximize(c, ivec({1, 1}));
  ASSERT_EQ(o.status, L::Status::Optimal);
  EXPECT_TRUE(c.satisfied_by(o.point));
  EXPECT_EQ(dot(ivec({1, 1}), o.point), o.value);
  EXPECT_EQ(o.value, Rational::parse("3/2"));
}

TEST(Lp, DegenerateAndDuplicateRows) {
  L::Constraints c = unit_square();
  c.add(ivec({1, 0}), 0);
  c.add(ivec({2, 0}), 0);
  c.add(ivec({1, 1}), 0);
  auto o = L::minimize(c, ivec({1, 1}));
  ASSERT_EQ(o.status, L::Status::Optimal);
  EXPECT_EQ(o.value, Rational(0));
  EXPECT_TRUE(c.satisfied_by(o.point));
}

TEST(Redundancy, Examples) {
  L::Constraints a(1);
  a.add(ivec({1}), 0);
  a.add(ivec({1}), -1);
  EXPECT_TRUE(L::is_redundant(a, 1));

  L::Constraints b(1);
  b.add(ivec({1}), 0);
  b.add(ivec({-1}), -1);
  EXPECT_FALSE(L::is_redundant(b, 0));
  EXPECT_FALSE(L::is_redundant(b, 1));

  L::Constraints sq = unit_square();
  sq.add(ivec({1, 1}), 0);
  EXPECT_TRUE(L::is_redundant(sq, 4));
  EXPECT_EQ(L::remove_redundant(sq).size(), 4u);
}

TEST(Vertices, Examples) {
  L::Constraints seg(1);
  seg.add(ivec({1}), 0);
  seg.add(ivec({-1}), -1);
  EXPECT_EQ(L::vertices_of(seg), (std::vector<QVector>{ivec({0}), ivec({1})}));

  // Candidate rows of the standard triangle shifted by s = 1/3.
  const Rational s = Rational::parse("1/3");
  L::Constraints core(2);
  core.add(ivec({1, 0}), s);
  core.add(ivec({0, 1}), s);
  core.add(ivec({-1, -1}), Rational(-1) + s);
  EXPECT_EQ(L::vertices_of(core), (std::vector<QVector>{QVector{s, s}}));

  auto corners = L::vertices_of(unit_square());
  EXPECT_EQ(corners, (std::vector<QVector>{ivec({0, 0}), ivec({0, 1}), ivec({1, 0}), ivec({1, 1})}));
}

TEST(Vertices, UnboundedIsAnErrorAndInfeasibleIsEmpty) {
  L::Constraints ray(1);
  ray.add(ivec({1}), 0);
  try {
    L::vertices_of(ray);
    FAIL() << "expected Unbounded";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Unbounded);
  }
  L::Constraints none(1);
  none.add(ivec({1}), 1);
  none.add(ivec({-1}), 0);
  EXPECT_TRUE(L::vertices_of(none).empty());
}

TEST(LpProperties, MaxIsMinusMinOfNegation) {
  std::mt19937 rng(21);
  std::uniform_int_distribution<long> entry(-4, 4);
  for (int trial = 0; trial < 60; ++trial) {
    auto c = random_bounded(rng, 3);
    QVector obj{Rational(entry(rng)), Rational(entry(rng)), Rational(entry(rng))};
    auto mx = L::maximize(c, obj);
    auto mn = L::minimize(c, -obj);
    ASSERT_EQ(mx.status, L::Status::Optimal);
    ASSERT_EQ(mn.status, L::Status::Optimal);
    EXPECT_EQ(mx.value, -mn.value);
  }
}

TEST(LpProperties, InvariantUnderRowScalingAndRedundantRows) {
  std::mt19937 rng(22);
  std::uniform_int_distribution<long> entry(-4, 4), num(1, 7), den(1, 5);
  for (int trial = 0; trial < 60; ++trial) {
    auto c = random_bounded(rng, 3);
    QVector obj{Rational(entry(rng)), Rational(entry(rng)), Rational(entry(rng))};
    const Rational base = L::maximize(c, obj).value;

    L::Constraints scaled(3);
    for (std::size_t i = 0; i < c.size(); ++i) {
      Rational f(Integer(num(rng)), Integer(den(rng)));
      scaled.add(f * c.normals[i], f * c.rhs[i]);
    }
    EXPECT_EQ(L::maximize(scaled, obj).value, base);

    L::Constraints padded = c;
    for (std::size_t i = 0; i < c.size(); ++i) padded.add(c.normals[i], c.rhs[i] - Rational(entry(rng) + 5));
    EXPECT_EQ(L::maximize(padded, obj).value, base);
  }
}

TEST(LpProperties, AgreesWithBruteForceOverVertices) {
  std::mt19937 rng(23);
  std::uniform_int_distribution<long> entry(-5, 5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(trial % 2);
    auto c = random_bounded(rng, d);
    QVector obj(d);
    for (auto& x : obj) x = entry(rng);
    auto vs = L::vertices_of(c);
    ASSERT_FALSE(vs.empty());
    Rational best = dot(obj, vs.front());
    for (const auto& v : vs) {
      EXPECT_TRUE(c.satisfied_by(v));
      best = max(best, dot(obj, v));
    }
    auto o = L::maximize(c, obj);
    ASSERT_EQ(o.status, L::Status::Optimal);
    EXPECT_EQ(o.value, best);
  }
}
