#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <unordered_set>
#include <utility>
#include <vector>

#include "finepoly/combinatorics.hpp"
#include "finepoly/error.hpp"
#include "finepoly/fine.hpp"
#include "finepoly/linalg.hpp"
#include "finepoly/milp.hpp"
#include "finepoly/polytope.hpp"
#include "finepoly/rational.hpp"

namespace finepoly {

// ---------------------------------------------------------------------------
// Numerators

/// |det [A | -1]| / gcd_j |det A_j| for a positively spanning (d+1) x d matrix A.
inline Integer eta(const QMatrix& a) {
  const std::size_t d = a.cols();
  if (a.rows() != d + 1) throw Error(Errc::DimensionMismatch, "eta needs a (d+1) x d matrix");
  if (!a.is_integral()) throw Error(Errc::InvalidArgument, "eta needs integer rows");
  if (!positively_spans(a.row_vectors(), d)) throw Error(Errc::NotSpanning, "rows do not positively span R^" + std::to_string(d));
  Integer bordered = det(a.with_column(QVector(d + 1, Rational(-1)))).num();
  Integer g = 0;
  for (std::size_t j = 0; j <= d; ++j) g = gcd(g, det(a.without_row(j)).num());
  return abs(bordered) / g;
}

/// All (d+1)-subsets (as index lists) of the normals that positively span R^d.
inline std::vector<std::vector<std::size_t>> positively_spanning_subsets(const std::vector<QVector>& normals, std::size_t d) {
  std::vector<std::vector<std::size_t>> out;
  for_each_combination(normals.size(), d + 1, [&](const std::vector<std::size_t>& idx) {
    std::vector<QVector> rows;
    for (auto i : idx) rows.push_back(normals[i]);
    if (positively_spans(rows, d)) out.push_back(idx);
    return true;
  });
  return out;
}

inline std::vector<std::vector<std::size_t>> positively_spanning_subsets(const NormalConfiguration& c) {
  return positively_spanning_subsets(c.normals, c.dim);
}

/// Union of eta over every positively spanning (d+1)-subset of every configuration.
inline std::set<Integer> numerator_candidates(const std::vector<NormalConfiguration>& configs) {
  std::set<Integer> out;
  for (const auto& c : configs) {
    for (const auto& idx : positively_spanning_subsets(c)) {
      std::vector<QVector> rows;
      for (auto i : idx) rows.push_back(c.normals[i]);
      out.insert(eta(QMatrix(rows, c.dim)));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scanning the spectrum of one configuration

struct ScanEntry {
  Rational fine_number;
  Rational mu_f;
  MilpResult witness;
};

struct ScanOptions {
  long box = 0;                    ///< 0 picks the MILP default
  std::optional<Rational> lower;   ///< defaults to the scan step
  std::optional<Rational> delta;   ///< defaults to scan_delta(config)
};

/**
 * Successively maximizes n^F with U lowered below each optimum found,
 * starting from U = 1/epsilon, until the MILP turns infeasible. Entries are
 * ordered by mu^F descending.
 */
inline std::vector<ScanEntry> spectrum_scan(const NormalConfiguration& config, const Rational& epsilon,
                                            const ScanOptions& opt = {}) {
  if (epsilon.sign() <= 0) throw Error(Errc::InvalidArgument, "epsilon must be positive");
  const Rational delta = opt.delta ? *opt.delta : scan_delta(config);
  if (delta.sign() <= 0) throw Error(Errc::InvalidArgument, "scan step must be positive");
  MilpInstance inst{config, opt.lower ? *opt.lower : delta, epsilon.reciprocal(), MilpSense::Maximize, opt.box};
  std::vector<ScanEntry> out;
  while (inst.lower <= inst.upper) {
    MilpResult r = milp_solve(inst);
    if (r.status != MilpStatus::Optimal) break;
    inst.upper = r.fine_number - delta;
    Rational nf = r.fine_number;
    out.push_back({nf, nf.reciprocal(), std::move(r)});
  }
  std::sort(out.begin(), out.end(), [](const ScanEntry& a, const ScanEntry& b) { return a.mu_f > b.mu_f; });
  return out;
}

// ---------------------------------------------------------------------------
// Realizing numerators

/**
 * Minimizes n^F for the configuration given by the rows of A. The default
 * lower bound is half the smallest positive value a denominator of
 * |det [A | -1]| allows.
 */
inline MilpResult realize_numerator(const QMatrix& a, long box = 0, std::optional<Rational> lower = std::nullopt) {
  const std::size_t d = a.cols();
  NormalConfiguration config = NormalConfiguration::make(d, a.row_vectors());
  Integer m = max_bordered_det(config.normals, d);
  MilpInstance inst{config, lower ? *lower : Rational(Integer(1), Integer(2 * m)), Rational(Integer(2 * m)),
                    MilpSense::Minimize, box, true};
  return milp_solve(inst);
}

// ---------------------------------------------------------------------------
// Two-dimensional configurations

namespace detail {

struct IPoint {
  long x, y;
  auto operator<=>(const IPoint&) const = default;
};

inline long cross(const IPoint& o, const IPoint& a, const IPoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

/// Counter-clockwise hull without collinear points (monotone chain).
inline std::vector<IPoint> int_hull(std::vector<IPoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<IPoint> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

/// 1 interior, 0 boundary, -1 outside, for a ccw hull with at least 3 vertices.
inline int locate(const std::vector<IPoint>& hull, const IPoint& p) {
  int result = 1;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    long c = cross(hull[i], hull[(i + 1) % hull.size()], p);
    if (c < 0) return -1;
    if (c == 0) result = 0;
  }
  return result;
}

/// Lattice polygons with vertices in [-r, r]^2 whose unique interior lattice
/// point is the origin, as lattice-point masks of the grid.
class ReflexiveSearch {
 public:
  explicit ReflexiveSearch(long r) : r_(r), side_(2 * r + 1) {
    for (long x = -r; x <= r; ++x)
      for (long y = -r; y <= r; ++y) grid_.push_back({x, y});
  }

  std::vector<std::vector<IPoint>> run() {
    const std::size_t n = grid_.size();
    const std::size_t origin = index({0, 0});
    std::vector<std::size_t> nonzero;
    for (std::size_t i = 0; i < n; ++i)
      if (i != origin) nonzero.push_back(i);
    // Every such polygon contains a triangle or quadrilateral of its vertices
    // with the origin in the interior.
    for (std::size_t k : {3, 4}) {
      for_each_combination(nonzero.size(), k, [&](const std::vector<std::size_t>& idx) {
        std::vector<IPoint> pts;
        for (auto i : idx) pts.push_back(grid_[nonzero[i]]);
        auto h = int_hull(pts);
        if (h.size() != k) return true;
        explore(h);
        return true;
      });
    }
    std::vector<std::vector<IPoint>> out;
    for (const auto& [mask, hull] : found_) out.push_back(hull);
    return out;
  }

 private:
  using Mask = std::uint64_t;

  std::size_t index(const IPoint& p) const {
    return static_cast<std::size_t>((p.x + r_) * side_ + (p.y + r_));
  }

  /// Lattice-point mask of the hull, or nullopt unless the interior is exactly {0}.
  std::optional<Mask> admissible(const std::vector<IPoint>& hull) const {
    if (hull.size() < 3) return std::nullopt;
    Mask m = 0;
    bool origin_inside = false;
    for (const auto& p : grid_) {
      int loc = locate(hull, p);
      if (loc < 0) continue;
      if (loc == 1) {
        if (p.x != 0 || p.y != 0) return std::nullopt;
        origin_inside = true;
      }
      m |= Mask{1} << index(p);
    }
    if (!origin_inside) return std::nullopt;
    return m;
  }

  void explore(const std::vector<IPoint>& hull) {
    auto m = admissible(hull);
    if (!m || !seen_.insert(*m).second) return;
    found_.emplace(*m, hull);
    for (const auto& p : grid_) {
      if (*m & (Mask{1} << index(p))) continue;
      std::vector<IPoint> pts = hull;
      pts.push_back(p);
      explore(int_hull(pts));
    }
  }

  long r_, side_;
  std::vector<IPoint> grid_;
  std::unordered_set<Mask> seen_;
  std::map<Mask, std::vector<IPoint>> found_;
};

/// Linear GL_2(Z) normal form of a polygon around the origin: the origin is
/// its only interior lattice point, so every equivalence fixes it.
inline std::vector<IPoint> linear_normal_form_2d(const std::vector<IPoint>& vs) {
  std::optional<std::vector<IPoint>> best;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < vs.size(); ++j) {
      if (i == j) continue;
      // columns v_i, v_j; find unimodular U with U [v_i v_j] upper triangular in HNF.
      long a = vs[i].x, b = vs[i].y;
      if (a * vs[j].y - b * vs[j].x == 0) continue;
      // extended gcd of (a, b)
      long g0 = a, g1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
      while (g1 != 0) {
        long q = g0 / g1;
        long tmp = g0 - q * g1; g0 = g1; g1 = tmp;
        tmp = s0 - q * s1; s0 = s1; s1 = tmp;
        tmp = t0 - q * t1; t0 = t1; t1 = tmp;
      }
      if (g0 < 0) { g0 = -g0; s0 = -s0; t0 = -t0; }
      // rows of U: (s0, t0) and (-b/g, a/g)
      long u00 = s0, u01 = t0, u10 = -b / g0, u11 = a / g0;
      // second column after the first row operation
      long c0 = u00 * vs[j].x + u01 * vs[j].y, c1 = u10 * vs[j].x + u11 * vs[j].y;
      if (c1 < 0) { u10 = -u10; u11 = -u11; c1 = -c1; }
      // reduce c0 into [0, c1)
      long f = c0 >= 0 ? c0 / c1 : -((-c0 + c1 - 1) / c1);
      u00 -= f * u10;
      u01 -= f * u11;
      std::vector<IPoint> img;
      for (const auto& v : vs) img.push_back({u00 * v.x + u01 * v.y, u10 * v.x + u11 * v.y});
      std::sort(img.begin(), img.end());
      if (!best || img < *best) best = std::move(img);
    }
  return *best;
}

}  // namespace detail

/**
 * The reflexive polygons up to unimodular equivalence, each as the
 * configuration of its vertices. Search region: vertices in [-3, 3]^2.
 */
inline std::vector<NormalConfiguration> enumerate_configs_2d() {
  detail::ReflexiveSearch search(3);
  std::map<std::vector<detail::IPoint>, std::vector<detail::IPoint>> classes;
  for (const auto& hull : search.run()) {
    auto key = detail::linear_normal_form_2d(hull);
    classes.emplace(std::move(key), hull);
  }
  std::vector<NormalConfiguration> out;
  for (const auto& [key, hull] : classes) {
    std::vector<QVector> normals;
    for (const auto& p : key) normals.push_back(QVector{Rational(p.x), Rational(p.y)});
    out.push_back(NormalConfiguration::make(2, std::move(normals)));
  }
  return out;
}

/// The only configuration in dimension one.
inline std::vector<NormalConfiguration> enumerate_configs_1d() {
  return {NormalConfiguration::make(1, {QVector{Rational(1)}, QVector{Rational(-1)}})};
}

/// Whether some nonzero lattice point x of conv(normals) has -x in it as well.
inline bool has_opposing_pair(const NormalConfiguration& c) {
  Polytope hull = Polytope::from_points(c.normals);
  auto pts = lattice_points(hull);
  for (const auto& x : pts) {
    if (is_zero(x)) continue;
    if (std::binary_search(pts.begin(), pts.end(), -x)) return true;
  }
  return false;
}

/**
 * Drops configurations with a positive circuit of length two. Such a pair
 * among the lattice points of conv(normals) would itself be a pair of core
 * normals, since core normals are closed under these combinations.
 */
inline std::vector<NormalConfiguration> filter_opposing(const std::vector<NormalConfiguration>& configs) {
  std::vector<NormalConfiguration> out;
  for (const auto& c : configs)
    if (!has_opposing_pair(c)) out.push_back(c);
  return out;
}

}  // namespace finepoly
