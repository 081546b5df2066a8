#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "finepoly/polytope.hpp"
#include "finepoly/rational.hpp"
#include "finepoly/spectrum.hpp"

namespace finepoly::corpus {

namespace detail {

using finepoly::detail::IPoint;

/// Affine GL_2(Z) normal form: the linear form of P - v minimized over vertices v.
inline std::vector<IPoint> affine_normal_form_2d(const std::vector<IPoint>& vs) {
  std::vector<IPoint> best;
  for (const auto& v : vs) {
    std::vector<IPoint> shifted;
    for (const auto& w : vs) shifted.push_back({w.x - v.x, w.y - v.y});
    auto form = finepoly::detail::linear_normal_form_2d(shifted);
    if (best.empty() || form < best) best = std::move(form);
  }
  return best;
}

inline Polytope from_ipoints(const std::vector<IPoint>& vs) {
  std::vector<QVector> pts;
  for (const auto& p : vs) pts.push_back(QVector{Rational(p.x), Rational(p.y)});
  return Polytope::from_points(std::move(pts));
}

}  // namespace detail

/**
 * Lattice polygons with vertices in [0, k]^2, one per affine unimodular
 * class, ordered by normal form. Representatives keep their box coordinates.
 */
inline std::vector<Polytope> polygons_in_box(long k) {
  using detail::IPoint;
  std::vector<IPoint> grid;
  for (long x = 0; x <= k; ++x)
    for (long y = 0; y <= k; ++y) grid.push_back({x, y});
  if (grid.size() > 20) throw Error(Errc::InvalidArgument, "box too large for subset enumeration");
  std::set<std::vector<IPoint>> hulls;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << grid.size()); ++mask) {
    if (std::popcount(mask) < 3) continue;
    std::vector<IPoint> pts;
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (mask & (std::uint32_t{1} << i)) pts.push_back(grid[i]);
    auto h = finepoly::detail::int_hull(pts);
    if (h.size() >= 3) hulls.insert(std::move(h));
  }
  // first hull (in the order of the set) represents its class
  std::map<std::vector<IPoint>, std::vector<IPoint>> classes;
  for (const auto& h : hulls) classes.emplace(detail::affine_normal_form_2d(h), h);
  std::vector<Polytope> out;
  for (const auto& [form, h] : classes) out.push_back(detail::from_ipoints(h));
  return out;
}

/**
 * Small three-dimensional lattice polytopes: every full-dimensional hull of
 * vertices of the unit cube, then `extra` random hulls of 4 to 6 points of
 * [0, 2]^3 (fixed seed). Duplicate vertex sets are dropped.
 */
inline std::vector<Polytope> small_polytopes_3d(std::size_t extra = 100, unsigned seed = 3) {
  std::vector<QVector> cube_pts = cube(3).vertices();
  std::set<std::vector<QVector>> seen;
  std::vector<Polytope> out;
  auto add = [&](std::vector<QVector> pts) {
    Polytope p = Polytope::from_points(std::move(pts));
    if (p.is_full_dimensional() && seen.insert(p.vertices()).second) out.push_back(std::move(p));
  };
  for (std::uint32_t mask = 0; mask < 256; ++mask) {
    if (std::popcount(mask) < 4) continue;
    std::vector<QVector> pts;
    for (std::size_t i = 0; i < 8; ++i)
      if (mask & (std::uint32_t{1} << i)) pts.push_back(cube_pts[i]);
    add(std::move(pts));
  }
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> coord(0, 2);
  std::uniform_int_distribution<std::size_t> count(4, 6);
  const std::size_t target = out.size() + extra;
  while (out.size() < target) {
    std::vector<QVector> pts(count(rng));
    for (auto& p : pts) p = QVector{Rational(coord(rng)), Rational(coord(rng)), Rational(coord(rng))};
    add(std::move(pts));
  }
  return out;
}

struct NamedCase {
  std::string id;
  Polytope polytope;
  Rational expected_mu;
};

inline Polytope scaled_hull(long k, std::vector<std::vector<const char*>> rows) {
  std::vector<QVector> pts;
  for (const auto& row : rows) {
    QVector v;
    for (const char* s : row) v.push_back(Rational(k) * Rational::parse(s));
    pts.push_back(std::move(v));
  }
  return Polytope::from_points(std::move(pts));
}

/// The three-dimensional witnesses P_5 ... P_19 with their stated mu^F.
inline std::vector<NamedCase> named_polytopes_3d() {
  return {
      {"P5", scaled_hull(1, {{"0", "0", "0"}, {"1", "0", "0"}, {"1", "2", "0"}, {"1", "0", "2"}}), Rational::parse("5/2")},
      {"P7", scaled_hull(1, {{"0", "0", "0"}, {"1", "0", "0"}, {"0", "1", "0"}, {"3", "8", "15"}}), Rational::parse("7/6")},
      {"P11", scaled_hull(5, {{"10", "-1", "4"}, {"-2", "-1", "-4/5"}, {"-2", "-1", "0"}, {"-2", "5", "-2"}}),
       Rational::parse("11/60")},
      {"P13", scaled_hull(15, {{"15", "-2", "-4"}, {"-1", "-2", "0"}, {"-1", "-2", "-4/5"}, {"-1", "10/3", "4/3"}}),
       Rational::parse("13/240")},
      {"P17", scaled_hull(21, {{"9", "-2", "-2"}, {"-1", "-2", "0"}, {"-1", "-2", "-4/7"}, {"-1", "14/3", "4/3"}}),
       Rational::parse("17/420")},
      {"P19", scaled_hull(21, {{"37/3", "-2", "11/3"}, {"-1", "-2", "-1/7"}, {"-1", "-2", "-1"}, {"-1", "8", "-3"}}),
       Rational::parse("19/840")},
  };
}

/// Fixed-seed random full-dimensional lattice polytopes with vertices in [lo, hi]^d.
inline std::vector<Polytope> random_lattice_polytopes(unsigned seed, std::size_t count, std::size_t d, long lo, long hi,
                                                      std::size_t points) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> coord(lo, hi);
  std::vector<Polytope> out;
  while (out.size() < count) {
    std::vector<QVector> pts(points);
    for (auto& p : pts) {
      p.clear();
      for (std::size_t k = 0; k < d; ++k) p.emplace_back(coord(rng));
    }
    Polytope p = Polytope::from_points(std::move(pts));
    if (p.is_full_dimensional()) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace finepoly::corpus
