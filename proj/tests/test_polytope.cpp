#include <gtest/gtest.h>

#include <random>

#include "finepoly/lp.hpp"
#include "finepoly/polytope.hpp"
#include "oracles.hpp"

using namespace finepoly;
using finepoly::testing::ivec;
using finepoly::testing::random_points;

namespace {

Polytope poly(std::initializer_list<std::initializer_list<long>> pts) {
  std::vector<QVector> v;
  for (auto p : pts) v.push_back(ivec(p));
  return Polytope::from_points(v);
}

QVector q(std::initializer_list<const char*> xs) {
  QVector v;
  for (auto s : xs) v.push_back(Rational::parse(s));
  return v;
}

// Membership by brute force over the vertices: x is in conv(V) iff an LP in
// the barycentric weights is feasible.
bool in_hull_oracle(const std::vector<QVector>& vs, const QVector& x, bool interior) {
  const std::size_t n = vs.size(), d = x.size();
  lp::Constraints c(n + 1);
  // weights lambda_i >= max(t, 0), sum = 1, sum lambda_i v_i = x ; maximize t
  for (std::size_t i = 0; i < n; ++i) {
    QVector row = zero_vector(n + 1);
    row[i] = 1;
    row[n] = -1;
    c.add(row, 0);
    c.add(unit_vector(n + 1, i), 0);
  }
  QVector ones = zero_vector(n + 1);
  for (std::size_t i = 0; i < n; ++i) ones[i] = 1;
  c.add_equality(ones, 1);
  for (std::size_t k = 0; k < d; ++k) {
    QVector row = zero_vector(n + 1);
    for (std::size_t i = 0; i < n; ++i) row[i] = vs[i][k];
    c.add_equality(row, x[k]);
  }
  auto o = lp::maximize(c, unit_vector(n + 1, n));
  if (o.status == lp::Status::Infeasible) return false;
  if (!interior) return true;
  return o.value.sign() > 0;
}

}  // namespace

TEST(Facets, StandardTriangle) {
  const Polytope tri = standard_simplex(2);
  const HRep& f = tri.facets();
  ASSERT_EQ(f.size(), 3u);
  // sorted lexicographically by normal
  EXPECT_EQ(f.normals[0], ivec({-1, -1}));
  EXPECT_EQ(f.rhs[0], Rational(-1));
  EXPECT_EQ(f.normals[1], ivec({0, 1}));
  EXPECT_EQ(f.rhs[1], Rational(0));
  EXPECT_EQ(f.normals[2], ivec({1, 0}));
  EXPECT_EQ(f.rhs[2], Rational(0));
}

TEST(Facets, UnitSquare) {
  const Polytope sq = cube(2);
  const HRep& f = sq.facets();
  ASSERT_EQ(f.size(), 4u);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Rational sum = f.normals[i][0] + f.normals[i][1];
    EXPECT_EQ(f.rhs[i], sum.sign() > 0 ? Rational(0) : Rational(-1));
  }
}

TEST(Facets, RationalSegment) {
  Polytope s2 = segment(Rational::parse("1/5"), Rational::parse("4/5"));
  const HRep& f = s2.facets();
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f.normals[0], ivec({-1}));
  EXPECT_EQ(f.rhs[0], Rational::parse("-4/5"));
  EXPECT_EQ(f.normals[1], ivec({1}));
  EXPECT_EQ(f.rhs[1], Rational::parse("1/5"));
  EXPECT_FALSE(s2.is_lattice());
}

TEST(Facets, NotFullDimensionalIsAnError) {
  Polytope flat = poly({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
  EXPECT_EQ(flat.dim(), 2);
  try {
    flat.facets();
    FAIL() << "expected NotFullDim";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotFullDim);
  }
  EXPECT_TRUE(flat.contains(ivec({0, 0, 0})));
  EXPECT_FALSE(flat.contains(ivec({0, 0, 1})));
  EXPECT_FALSE(flat.contains(ivec({1, 1, 0})));
}

TEST(Polytope, DropsInteriorAndDuplicatePoints) {
  Polytope p = poly({{0, 0}, {2, 0}, {0, 2}, {2, 2}, {1, 1}, {1, 0}, {0, 0}});
  EXPECT_EQ(p.vertices().size(), 4u);
  EXPECT_TRUE(p.is_lattice());
  Polytope seg3 = poly({{0, 0}, {1, 1}, {2, 2}});
  EXPECT_EQ(seg3.dim(), 1);
  EXPECT_EQ(seg3.vertices(), (std::vector<QVector>{ivec({0, 0}), ivec({2, 2})}));
}

TEST(Support, Examples) {
  EXPECT_EQ(support(standard_simplex(2), ivec({-1, -1})), Rational(-1));
  EXPECT_EQ(support(segment(0, 2), ivec({-1})), Rational(-2));
  EXPECT_EQ(support(segment(Rational::parse("1/5"), Rational::parse("4/5")), ivec({1})), Rational::parse("1/5"));
}

TEST(LatticePoints, Examples) {
  EXPECT_EQ(lattice_points(standard_simplex(2)).size(), 3u);
  EXPECT_TRUE(interior_lattice_points(standard_simplex(2)).empty());
  EXPECT_EQ(interior_lattice_points(dilated_simplex(2, 3)), (std::vector<QVector>{ivec({1, 1})}));
  Polytope diamond = poly({{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
  EXPECT_EQ(interior_lattice_points(diamond), (std::vector<QVector>{ivec({0, 0})}));
  EXPECT_EQ(lattice_points(diamond).size(), 5u);
}

TEST(LatticePoints, MatchHullOracle) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    Polytope p = Polytope::from_points(random_points(rng, 5, 2, -2, 3));
    if (!p.is_full_dimensional()) continue;
    auto all = lattice_points(p);
    auto inner = interior_lattice_points(p);
    for (long x = -2; x <= 3; ++x)
      for (long y = -2; y <= 3; ++y) {
        QVector pt = ivec({x, y});
        const bool in = std::binary_search(all.begin(), all.end(), pt);
        const bool inside = std::binary_search(inner.begin(), inner.end(), pt);
        EXPECT_EQ(in, in_hull_oracle(p.vertices(), pt, false)) << to_string(pt) << " trial " << trial;
        EXPECT_EQ(inside, in_hull_oracle(p.vertices(), pt, true));
      }
  }
}

TEST(Codegree, Examples) {
  EXPECT_EQ(codegree(standard_simplex(2)), 3);
  EXPECT_EQ(degree(standard_simplex(2)), 0);
  EXPECT_EQ(codegree(dilated_simplex(2, 2)), 2);
  EXPECT_EQ(degree(dilated_simplex(2, 2)), 1);
  EXPECT_EQ(codegree(cube(2)), 2);
  EXPECT_EQ(degree(cube(2)), 1);
}

TEST(Codegree, StandardSimplexUpToFive) {
  for (std::size_t d = 1; d <= 5; ++d) EXPECT_EQ(codegree(standard_simplex(d)), static_cast<int>(d) + 1) << d;
}

TEST(Codegree, NeedsLatticePolytope) {
  EXPECT_THROW(codegree(segment(Rational::parse("1/5"), Rational::parse("4/5"))), Error);
}

TEST(Constructors, ExceptionalSimplex) {
  Polytope e2 = exceptional_simplex(2);
  EXPECT_EQ(e2.vertices(), (std::vector<QVector>{ivec({0, 0}), ivec({0, 2}), ivec({2, 0})}));
  EXPECT_EQ(exceptional_simplex(4).vertices().size(), 5u);
  EXPECT_EQ(exceptional_simplex(4).dim(), 4);
  EXPECT_THROW(exceptional_simplex(1), Error);
}

TEST(Constructors, PyramidAndPrism) {
  Polytope pyr = pyramid(segment(0, 1));
  EXPECT_TRUE(unimodularly_equivalent(pyr, standard_simplex(2)));
  EXPECT_TRUE(pyr.contains(ivec({0, 0})));
  EXPECT_TRUE(pyr.contains(ivec({1, 1})));
  Polytope pr = prism(standard_simplex(2), 3);
  EXPECT_EQ(pr.vertices().size(), 6u);
  EXPECT_EQ(pr.dim(), 3);
}

TEST(Constructors, LawrencePrismAndCayley) {
  Polytope lp11 = lawrence_prism({1, 1});
  EXPECT_EQ(lp11, cayley_sum({segment(0, 1), segment(0, 1)}));
  EXPECT_TRUE(unimodularly_equivalent(lp11, cube(2)));
  Polytope lp = lawrence_prism({1, 2, 0});
  EXPECT_EQ(lp.dim(), 3);
  EXPECT_EQ(lp.vertices().size(), 5u);
  EXPECT_THROW(lawrence_prism({-1, 2}), Error);
}

TEST(Constructors, DilateTranslateUnimodular) {
  Polytope p = dilate(standard_simplex(2), Rational::parse("3/2"));
  EXPECT_FALSE(p.is_lattice());
  EXPECT_THROW(dilate(p, 0), Error);
  Polytope t = translate(standard_simplex(2), ivec({5, -1}));
  EXPECT_TRUE(t.contains(ivec({5, -1})));
  QMatrix shear({ivec({1, 3}), ivec({0, 1})});
  EXPECT_TRUE(unimodularly_equivalent(apply_unimodular(standard_simplex(2), shear), standard_simplex(2)));
  EXPECT_THROW(apply_unimodular(standard_simplex(2), QMatrix({ivec({2, 0}), ivec({0, 1})})), Error);
}

TEST(NormalForm, SeparatesInequivalentPolygons) {
  EXPECT_FALSE(unimodularly_equivalent(standard_simplex(2), dilated_simplex(2, 2)));
  EXPECT_FALSE(unimodularly_equivalent(cube(2), poly({{0, 0}, {2, 0}, {0, 1}, {2, 1}})));
  EXPECT_TRUE(unimodularly_equivalent(poly({{0, 0}, {1, 0}, {0, 1}}), poly({{3, 3}, {4, 5}, {5, 8}})));
}

TEST(PolytopeProperties, FacetsRoundTripThroughVertexEnumeration) {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(trial % 2);
    Polytope p = Polytope::from_points(random_points(rng, 6, d, -3, 3));
    if (!p.is_full_dimensional()) continue;
    const HRep& f = p.facets();
    lp::Constraints c(d, f.normals, f.rhs);
    EXPECT_EQ(lp::vertices_of(c), p.vertices());
    for (std::size_t i = 0; i < f.size(); ++i) {
      EXPECT_EQ(primitive(f.normals[i]), f.normals[i]);
      EXPECT_EQ(support(p, f.normals[i]), f.rhs[i]);
      std::vector<QVector> tight;
      for (const auto& v : p.vertices())
        if (dot(f.normals[i], v) == f.rhs[i]) tight.push_back(v);
      EXPECT_EQ(affine_dimension(tight), static_cast<int>(d) - 1);
      EXPECT_FALSE(lp::is_redundant(c, i));
    }
  }
}

TEST(PolytopeProperties, LatticePointsFollowUnimodularMaps) {
  std::mt19937 rng(43);
  QMatrix u({ivec({2, 1}), ivec({1, 1})});
  QMatrix u_inv({ivec({1, -1}), ivec({-1, 2})});
  ASSERT_EQ(u * u_inv, QMatrix::identity(2));
  for (int trial = 0; trial < 30; ++trial) {
    Polytope p = Polytope::from_points(random_points(rng, 5, 2, -2, 2));
    if (!p.is_full_dimensional()) continue;
    auto all = lattice_points(p);
    auto inner = interior_lattice_points(p);
    for (const auto& x : inner) EXPECT_TRUE(std::binary_search(all.begin(), all.end(), x));
    Polytope img = apply_unimodular(p, u);
    auto mapped = lattice_points(img);
    auto mapped_inner = interior_lattice_points(img);
    std::vector<QVector> back, back_inner;
    for (const auto& x : mapped) back.push_back(u_inv * x);
    for (const auto& x : mapped_inner) back_inner.push_back(u_inv * x);
    std::sort(back.begin(), back.end());
    std::sort(back_inner.begin(), back_inner.end());
    EXPECT_EQ(back, all);
    EXPECT_EQ(back_inner, inner);
    EXPECT_EQ(codegree(img), codegree(p));
    EXPECT_TRUE(unimodularly_equivalent(img, p));
  }
}
