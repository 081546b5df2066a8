#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "finepoly/combinatorics.hpp"
#include "finepoly/error.hpp"
#include "finepoly/linalg.hpp"
#include "finepoly/rational.hpp"

namespace finepoly {

/// Inequality description { x : <normals[i], x> >= rhs[i] } with primitive
/// integer inward normals, one row per facet.
struct HRep {
  std::size_t dim = 0;
  std::vector<QVector> normals;
  QVector rhs;

  std::size_t size() const { return normals.size(); }
  friend bool operator==(const HRep&, const HRep&) = default;
};

/**
 * Rational polytope given by its (irredundant) vertex list.
 *
 * The inequality side is computed once at construction: facets when the
 * polytope is full-dimensional, otherwise affine-hull equations plus facet
 * inequalities of the polytope inside its hull. Instances are immutable.
 */
class Polytope {
 public:
  /// Convex hull of a nonempty point set; interior and duplicate points are dropped.
  static Polytope from_points(std::vector<QVector> points) {
    if (points.empty()) throw Error(Errc::InvalidArgument, "polytope needs at least one point");
    const std::size_t d = points.front().size();
    for (const auto& p : points)
      if (p.size() != d) throw Error(Errc::DimensionMismatch, "points of mixed dimension");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    Polytope P;
    P.ambient_ = d;
    Hull h = hull(points, d);
    P.vertices_ = std::move(h.vertices);
    P.dim_ = h.dim;
    P.ineq_ = std::move(h.ineq);
    P.eq_normals_ = std::move(h.eq_normals);
    P.eq_rhs_ = std::move(h.eq_rhs);
    P.lattice_ = std::all_of(P.vertices_.begin(), P.vertices_.end(), [](const QVector& v) { return is_integral(v); });
    return P;
  }

  std::size_t ambient_dim() const { return ambient_; }
  const std::vector<QVector>& vertices() const { return vertices_; }
  bool is_lattice() const { return lattice_; }
  int dim() const { return dim_; }
  bool is_full_dimensional() const { return dim_ == static_cast<int>(ambient_); }

  /// Facet description; only defined for full-dimensional polytopes.
  const HRep& facets() const {
    if (!is_full_dimensional())
      throw Error(Errc::NotFullDim, "polytope of dimension " + std::to_string(dim_) + " in R^" + std::to_string(ambient_));
    return ineq_;
  }

  /// Affine hull equations <a, x> = b (empty when full-dimensional).
  const std::vector<QVector>& hull_equations() const { return eq_normals_; }
  const QVector& hull_rhs() const { return eq_rhs_; }

  bool contains(const QVector& x) const {
    for (std::size_t i = 0; i < eq_normals_.size(); ++i)
      if (dot(eq_normals_[i], x) != eq_rhs_[i]) return false;
    for (std::size_t i = 0; i < ineq_.size(); ++i)
      if (dot(ineq_.normals[i], x) < ineq_.rhs[i]) return false;
    return true;
  }

  /// Membership in the interior (always false when not full-dimensional).
  bool contains_in_interior(const QVector& x) const {
    if (!is_full_dimensional()) return false;
    for (std::size_t i = 0; i < ineq_.size(); ++i)
      if (dot(ineq_.normals[i], x) <= ineq_.rhs[i]) return false;
    return true;
  }

  friend bool operator==(const Polytope& a, const Polytope& b) {
    return a.ambient_ == b.ambient_ && a.vertices_ == b.vertices_;
  }

 private:
  struct Hull {
    std::vector<QVector> vertices;
    int dim = 0;
    HRep ineq;
    std::vector<QVector> eq_normals;
    QVector eq_rhs;
  };

  static Hull hull(const std::vector<QVector>& pts, std::size_t d) {
    Hull h;
    h.ineq.dim = d;
    if (pts.size() == 1 || d == 0) {
      h.vertices = {pts.front()};
      h.dim = 0;
      for (std::size_t k = 0; k < d; ++k) {
        h.eq_normals.push_back(unit_vector(d, k));
        h.eq_rhs.push_back(pts.front()[k]);
      }
      return h;
    }
    std::vector<QVector> diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
    Echelon e = rref(QMatrix(diffs, d));
    const std::size_t r = e.rank();
    h.dim = static_cast<int>(r);
    if (r == d) {
      full_dim_hull(pts, d, h);
      return h;
    }
    // The coordinate projection onto the pivot columns is injective on the
    // affine hull, so hull computations can be done there.
    const auto& cols = e.pivots;
    std::vector<QVector> proj;
    std::map<QVector, std::size_t> back;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      QVector q;
      for (auto c : cols) q.push_back(pts[i][c]);
      back.emplace(q, i);
      proj.push_back(std::move(q));
    }
    Hull low;
    low.ineq.dim = r;
    full_dim_hull(proj, r, low);
    for (const auto& v : low.vertices) h.vertices.push_back(pts[back.at(v)]);
    std::sort(h.vertices.begin(), h.vertices.end());
    for (std::size_t i = 0; i < low.ineq.size(); ++i) {
      QVector a = zero_vector(d);
      for (std::size_t k = 0; k < r; ++k) a[cols[k]] = low.ineq.normals[i][k];
      h.ineq.normals.push_back(std::move(a));
      h.ineq.rhs.push_back(low.ineq.rhs[i]);
    }
    for (const auto& z : nullspace(QMatrix(diffs, d))) {
      QVector a = primitive_direction(z);
      h.eq_rhs.push_back(dot(a, pts[0]));
      h.eq_normals.push_back(std::move(a));
    }
    return h;
  }

  // Brute force over d-subsets of the points: each affinely independent
  // subset spans a hyperplane, kept when all points lie on one side.
  static void full_dim_hull(const std::vector<QVector>& pts, std::size_t d, Hull& h) {
    std::set<std::pair<QVector, Rational>> facets;
    if (d == 1) {
      auto [lo, hi] = std::minmax_element(pts.begin(), pts.end());
      facets.insert({QVector{Rational(1)}, (*lo)[0]});
      facets.insert({QVector{Rational(-1)}, -(*hi)[0]});
    } else {
      for_each_combination(pts.size(), d, [&](const std::vector<std::size_t>& idx) {
        std::vector<QVector> diffs;
        for (std::size_t k = 1; k < d; ++k) diffs.push_back(pts[idx[k]] - pts[idx[0]]);
        auto ns = nullspace(QMatrix(diffs, d));
        if (ns.size() != 1) return true;
        QVector a = primitive_direction(ns[0]);
        Rational b = dot(a, pts[idx[0]]);
        bool has_pos = false, has_neg = false;
        for (const auto& p : pts) {
          int s = (dot(a, p) - b).sign();
          has_pos |= s > 0;
          has_neg |= s < 0;
          if (has_pos && has_neg) return true;
        }
        if (has_neg) {
          a = -a;
          b = -b;
        }
        facets.insert({std::move(a), std::move(b)});
        return true;
      });
    }
    std::vector<std::pair<QVector, Rational>> sorted(facets.begin(), facets.end());
    for (auto& [a, b] : sorted) {
      h.ineq.normals.push_back(a);
      h.ineq.rhs.push_back(b);
    }
    for (const auto& p : pts) {
      std::vector<QVector> tight;
      for (std::size_t i = 0; i < h.ineq.size(); ++i)
        if (dot(h.ineq.normals[i], p) == h.ineq.rhs[i]) tight.push_back(h.ineq.normals[i]);
      if (rank(tight, d) == d) h.vertices.push_back(p);
    }
  }

  std::size_t ambient_ = 0;
  std::vector<QVector> vertices_;
  bool lattice_ = false;
  int dim_ = 0;
  HRep ineq_;
  std::vector<QVector> eq_normals_;
  QVector eq_rhs_;
};

inline const HRep& facets(const Polytope& p) { return p.facets(); }

/// Support function h_P(a) = min over P of <a, x>.
inline Rational support(const Polytope& p, const QVector& a) {
  const auto& vs = p.vertices();
  Rational best = dot(a, vs.front());
  for (std::size_t i = 1; i < vs.size(); ++i) best = min(best, dot(a, vs[i]));
  return best;
}

namespace detail {

/// Visits every integer point of the bounding box of scale * P in
/// lexicographic order; stops when visit returns false.
template <class Visit>
void scan_box(const Polytope& p, const Rational& scale, Visit&& visit) {
  const std::size_t d = p.ambient_dim();
  std::vector<Integer> lo(d), hi(d);
  for (std::size_t k = 0; k < d; ++k) {
    Rational mn = p.vertices().front()[k], mx = mn;
    for (const auto& v : p.vertices()) {
      mn = min(mn, v[k]);
      mx = max(mx, v[k]);
    }
    lo[k] = (mn * scale).ceil();
    hi[k] = (mx * scale).floor();
    if (lo[k] > hi[k]) return;
  }
  std::vector<Integer> cur = lo;
  QVector x(d);
  while (true) {
    for (std::size_t k = 0; k < d; ++k) x[k] = Rational(cur[k]);
    if (!visit(static_cast<const QVector&>(x))) return;
    bool advanced = false;
    for (std::size_t k = d; k-- > 0;) {
      if (cur[k] < hi[k]) {
        ++cur[k];
        for (std::size_t j = k + 1; j < d; ++j) cur[j] = lo[j];
        advanced = true;
        break;
      }
    }
    if (!advanced) return;
  }
}

}  // namespace detail

/// Lattice points of P in lexicographic order (bounding-box scan).
inline std::vector<QVector> lattice_points(const Polytope& p) {
  std::vector<QVector> out;
  detail::scan_box(p, Rational(1), [&](const QVector& x) {
    if (p.contains(x)) out.push_back(x);
    return true;
  });
  return out;
}

inline std::vector<QVector> interior_lattice_points(const Polytope& p) {
  std::vector<QVector> out;
  if (!p.is_full_dimensional()) return out;
  detail::scan_box(p, Rational(1), [&](const QVector& x) {
    if (p.contains_in_interior(x)) out.push_back(x);
    return true;
  });
  return out;
}

/// Smallest k >= 1 such that the interior of kP contains a lattice point.
inline int codegree(const Polytope& p) {
  if (!p.is_lattice()) throw Error(Errc::LatticeRequired, "codegree of a non-lattice polytope");
  const auto& f = p.facets();
  const int d = static_cast<int>(p.ambient_dim());
  for (int k = 1; k <= d + 1; ++k) {
    Rational kr(k);
    bool hit = false;
    detail::scan_box(p, kr, [&](const QVector& x) {
      for (std::size_t i = 0; i < f.size(); ++i)
        if (dot(f.normals[i], x) <= kr * f.rhs[i]) return true;
      hit = true;
      return false;
    });
    if (hit) return k;
  }
  throw Error(Errc::InvalidArgument, "codegree exceeded d + 1; polytope is not a lattice polytope?");
}

inline int degree(const Polytope& p) { return static_cast<int>(p.ambient_dim()) + 1 - codegree(p); }

// ---------------------------------------------------------------------------
// Constructors

inline Polytope segment(const Rational& a, const Rational& b) {
  return Polytope::from_points({QVector{a}, QVector{b}});
}

/// conv{0, e_1, ..., e_d}
inline Polytope standard_simplex(std::size_t d) {
  std::vector<QVector> pts{zero_vector(d)};
  for (std::size_t i = 0; i < d; ++i) pts.push_back(unit_vector(d, i));
  return Polytope::from_points(std::move(pts));
}

/// conv{0, k e_1, ..., k e_d} for integer k
inline Polytope dilated_simplex(std::size_t d, long k) {
  std::vector<QVector> pts{zero_vector(d)};
  for (std::size_t i = 0; i < d; ++i) pts.push_back(Rational(k) * unit_vector(d, i));
  return Polytope::from_points(std::move(pts));
}

/// [0,k]^d
inline Polytope cube(std::size_t d, long k = 1) {
  std::vector<QVector> pts;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    QVector v = zero_vector(d);
    for (std::size_t i = 0; i < d; ++i)
      if (mask & (std::size_t{1} << i)) v[i] = k;
    pts.push_back(std::move(v));
  }
  return Polytope::from_points(std::move(pts));
}

inline Polytope dilate(const Polytope& p, const Rational& k) {
  if (k.sign() <= 0) throw Error(Errc::InvalidArgument, "dilation factor must be positive");
  std::vector<QVector> pts;
  for (const auto& v : p.vertices()) pts.push_back(k * v);
  return Polytope::from_points(std::move(pts));
}

inline Polytope translate(const Polytope& p, const QVector& t) {
  std::vector<QVector> pts;
  for (const auto& v : p.vertices()) pts.push_back(v + t);
  return Polytope::from_points(std::move(pts));
}

/// Image under an arbitrary linear map x -> M x (M may be non-square).
inline Polytope linear_image(const Polytope& p, const QMatrix& m) {
  if (m.cols() != p.ambient_dim()) throw Error(Errc::DimensionMismatch, "linear map domain");
  std::vector<QVector> pts;
  for (const auto& v : p.vertices()) pts.push_back(m * v);
  return Polytope::from_points(std::move(pts));
}

inline Polytope apply_unimodular(const Polytope& p, const QMatrix& u) {
  if (!u.is_square() || !u.is_integral() || det(u).abs() != Rational(1))
    throw Error(Errc::InvalidArgument, "matrix is not unimodular");
  return linear_image(p, u);
}

/// conv(P x {1}, 0)
inline Polytope pyramid(const Polytope& p) {
  std::vector<QVector> pts{zero_vector(p.ambient_dim() + 1)};
  for (auto v : p.vertices()) {
    v.push_back(Rational(1));
    pts.push_back(std::move(v));
  }
  return Polytope::from_points(std::move(pts));
}

/// P x [0, h]
inline Polytope prism(const Polytope& p, const Rational& h) {
  std::vector<QVector> pts;
  for (const auto& v : p.vertices()) {
    QVector lo = v, hi = v;
    lo.push_back(Rational(0));
    hi.push_back(h);
    pts.push_back(std::move(lo));
    pts.push_back(std::move(hi));
  }
  return Polytope::from_points(std::move(pts));
}

/// conv( P_0 x 0  u  P_1 x e_1  u ... u  P_t x e_t )
inline Polytope cayley_sum(const std::vector<Polytope>& parts) {
  if (parts.empty()) throw Error(Errc::InvalidArgument, "Cayley sum of nothing");
  const std::size_t k = parts.front().ambient_dim(), t = parts.size() - 1;
  std::vector<QVector> pts;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].ambient_dim() != k) throw Error(Errc::DimensionMismatch, "Cayley summands in different spaces");
    for (const auto& v : parts[i].vertices()) {
      QVector w = v;
      for (std::size_t j = 1; j <= t; ++j) w.push_back(Rational(j == i ? 1 : 0));
      pts.push_back(std::move(w));
    }
  }
  return Polytope::from_points(std::move(pts));
}

/// Cayley sum of the segments [0, h_1], ..., [0, h_d].
inline Polytope lawrence_prism(const std::vector<long>& heights) {
  if (heights.empty()) throw Error(Errc::InvalidArgument, "Lawrence prism needs at least one height");
  std::vector<Polytope> segs;
  for (long h : heights) {
    if (h < 0) throw Error(Errc::InvalidArgument, "Lawrence prism heights must be nonnegative");
    segs.push_back(segment(0, h));
  }
  return cayley_sum(segs);
}

/// (d-2)-fold lattice pyramid over 2 * Delta_2.
inline Polytope exceptional_simplex(std::size_t d) {
  if (d < 2) throw Error(Errc::InvalidArgument, "exceptional simplex needs d >= 2");
  Polytope p = dilated_simplex(2, 2);
  for (std::size_t i = 2; i < d; ++i) p = pyramid(p);
  return p;
}

// ---------------------------------------------------------------------------
// Unimodular normal form

/**
 * Canonical representative of a full-dimensional lattice polytope up to
 * affine unimodular maps.
 *
 * For every ordered choice of a base vertex v_0 and d further vertices with
 * linearly independent differences M, the unique unimodular T putting M into
 * Hermite normal form is applied to all translated vertices; the
 * lexicographically smallest sorted vertex list wins. Equivalent polytopes
 * see the same family of candidates, so the minimum is an invariant.
 */
inline std::vector<QVector> unimodular_normal_form(const Polytope& p) {
  if (!p.is_lattice()) throw Error(Errc::LatticeRequired, "normal form of a non-lattice polytope");
  if (!p.is_full_dimensional()) throw Error(Errc::NotFullDim, "normal form needs a full-dimensional polytope");
  const auto& vs = p.vertices();
  const std::size_t n = vs.size(), d = p.ambient_dim();
  std::optional<std::vector<QVector>> best;
  std::vector<std::size_t> pick(d + 1);
  std::vector<bool> used(n, false);
  auto consider = [&]() {
    QMatrix m(d, d);
    for (std::size_t c = 0; c < d; ++c) {
      QVector diff = vs[pick[c + 1]] - vs[pick[0]];
      for (std::size_t r = 0; r < d; ++r) m(r, c) = diff[r];
    }
    HermiteForm hf = hermite_normal_form(m);
    if (hf.pivots.size() != d) return;
    std::vector<QVector> img;
    img.reserve(n);
    for (const auto& v : vs) img.push_back(hf.u * (v - vs[pick[0]]));
    std::sort(img.begin(), img.end());
    if (!best || img < *best) best = std::move(img);
  };
  auto rec = [&](auto&& self, std::size_t depth) -> void {
    if (depth == d + 1) {
      consider();
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      used[i] = true;
      pick[depth] = i;
      self(self, depth + 1);
      used[i] = false;
    }
  };
  rec(rec, 0);
  return *best;
}

inline bool unimodularly_equivalent(const Polytope& a, const Polytope& b) {
  if (a.ambient_dim() != b.ambient_dim() || a.vertices().size() != b.vertices().size()) return false;
  return unimodular_normal_form(a) == unimodular_normal_form(b);
}

}  // namespace finepoly
