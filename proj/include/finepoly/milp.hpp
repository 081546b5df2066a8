#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "finepoly/combinatorics.hpp"
#include "finepoly/error.hpp"
#include "finepoly/fine.hpp"
#include "finepoly/linalg.hpp"
#include "finepoly/lp.hpp"
#include "finepoly/polytope.hpp"
#include "finepoly/rational.hpp"

namespace finepoly {

/// True when the nonnegative combinations of vs fill R^d.
inline bool positively_spans(const std::vector<QVector>& vs, std::size_t d) {
  if (vs.empty() || rank(vs, d) != d) return false;
  // A full-rank set positively spans iff sum lambda_i v_i = 0 has a solution with all lambda_i >= 1.
  const std::size_t n = vs.size();
  lp::Constraints c(n);
  for (std::size_t i = 0; i < n; ++i) c.add(unit_vector(n, i), Rational(1));
  for (std::size_t k = 0; k < d; ++k) {
    QVector row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = vs[i][k];
    c.add_equality(row, Rational(0));
  }
  return lp::is_feasible(c);
}

/// Candidate Fine core normals: primitive integer functionals positively spanning R^d.
struct NormalConfiguration {
  std::size_t dim = 0;
  std::vector<QVector> normals;

  static NormalConfiguration make(std::size_t d, std::vector<QVector> normals) {
    for (const auto& a : normals) {
      if (a.size() != d) throw Error(Errc::DimensionMismatch, "normal " + to_string(a) + " in dimension " + std::to_string(d));
      if (primitive(a) != a) throw Error(Errc::InvalidArgument, "normal " + to_string(a) + " is not primitive");
    }
    if (!positively_spans(normals, d)) throw Error(Errc::NotSpanning, "normals do not positively span R^" + std::to_string(d));
    return {d, std::move(normals)};
  }

  friend bool operator==(const NormalConfiguration&, const NormalConfiguration&) = default;
};

/// |det [A_S | -1]| maximized over (d+1)-subsets S; with spanning_only,
/// only over those that positively span. 0 if there are none.
inline Integer max_bordered_det(const std::vector<QVector>& normals, std::size_t d, bool spanning_only = true) {
  Integer best = 0;
  for_each_combination(normals.size(), d + 1, [&](const std::vector<std::size_t>& idx) {
    std::vector<QVector> rows;
    for (auto i : idx) rows.push_back(normals[i]);
    if (spanning_only && !positively_spans(rows, d)) return true;
    QMatrix m = QMatrix(rows, d).with_column(QVector(d + 1, Rational(-1)));
    Rational v = det(m).abs();
    if (v.num() > best) best = v.num();
    return true;
  });
  return best;
}

/**
 * Step used between successive scan bounds: 1 / (2 max |det [A_S | -1]|)
 * over spanning subsets S. Any nonsingular S fixes n^F to a multiple of
 * 1 / |det [A_S | -1]|, so configurations without a spanning subset (such
 * as {+-e_1, +-e_2}) fall back to all nonsingular subsets.
 */
inline Rational scan_delta(const NormalConfiguration& config) {
  Integer m = max_bordered_det(config.normals, config.dim);
  if (m == 0) m = max_bordered_det(config.normals, config.dim, false);
  if (m == 0) throw Error(Errc::NotSpanning, "no nonsingular subset");
  return Rational(Integer(1), Integer(2 * m));
}

enum class MilpSense { Maximize, Minimize };

struct MilpInstance {
  NormalConfiguration config;
  Rational lower;  ///< L, must be positive
  Rational upper;  ///< U
  MilpSense sense = MilpSense::Maximize;
  long box = 0;    ///< R; 0 picks the default 12 (d + 1)
  bool branch_on_levels = false;  ///< branch on <a_i, u_i> before single coordinates

  long effective_box() const { return box > 0 ? box : 12 * static_cast<long>(config.dim + 1); }
};

enum class MilpStatus { Optimal, Infeasible };

struct MilpResult {
  MilpStatus status = MilpStatus::Infeasible;
  Rational fine_number;
  QVector core_point;
  std::vector<QVector> witness_vertices;  ///< u_1..u_n in configuration order
  bool at_box_boundary = false;           ///< some u_i touches the box; optimum may be an artifact of R
  std::size_t nodes = 0;
};

namespace detail {

/**
 * Branch-and-bound for
 *   max/min n  s.t.  <a_i, u_j - u_i> >= 0,  <a_i, p> = <a_i, u_i> + n,
 *                   L <= n <= U,  p in [0,1]^d,  u_i in [-R, R]^d integer.
 *
 * Integer solutions are accepted only after checking that p lies in the Fine
 * adjoint polytope of conv(u) at level n. A violated functional b gives the
 * disjunction "some j has <b, p - u_j> >= n", which is branched on; the
 * relaxation alone would admit polytopes whose true Fine number is smaller.
 */
class MilpSolver {
 public:
  explicit MilpSolver(const MilpInstance& inst)
      : inst_(inst), d_(inst.config.dim), n_(inst.config.normals.size()), r_(inst.effective_box()) {
    nvars_ = n_ * d_ + d_ + 1;
    base_ = base_constraints();
  }

  MilpResult run() {
    MilpResult best;
    std::vector<Node> stack{Node{}};
    while (!stack.empty()) {
      Node node = std::move(stack.back());
      stack.pop_back();
      ++best.nodes;
      lp::Constraints c = base_;
      for (const auto& [a, b] : node.rows) c.add(a, b);
      lp::LpOutcome o = lp::solve({c, objective(), lp::Sense::Maximize});
      if (o.status != lp::Status::Optimal) continue;  // bounded by construction; infeasible prunes
      const Rational bound = maximizing() ? o.value : -o.value;
      if (best.status == MilpStatus::Optimal && !improves(bound, best.fine_number)) continue;

      if (auto e = fractional_expression(o.point)) {
        const Integer fl = dot(*e, o.point).floor();
        Node up = node, down = std::move(node);
        up.rows.emplace_back(*e, Rational(Integer(fl + 1)));
        down.rows.emplace_back(-*e, Rational(Integer(-fl)));
        stack.push_back(std::move(up));
        stack.push_back(std::move(down));  // floor child is explored first
        continue;
      }

      if (auto b = violated_functional(o.point)) {
        for (std::size_t j = n_; j-- > 0;) {
          Node child = node;
          child.rows.emplace_back(disjunct_row(*b, j), Rational(0));
          stack.push_back(std::move(child));
        }
        continue;
      }

      best.status = MilpStatus::Optimal;
      best.fine_number = o.point[nvars_ - 1];
      best.core_point = QVector(o.point.begin() + static_cast<std::ptrdiff_t>(n_ * d_),
                                o.point.begin() + static_cast<std::ptrdiff_t>(n_ * d_ + d_));
      best.witness_vertices = vertices_of_point(o.point);
      best.at_box_boundary = false;
      for (const auto& u : best.witness_vertices)
        for (const auto& x : u)
          if (x.abs() == Rational(r_)) best.at_box_boundary = true;
    }
    return best;
  }

 private:
  struct Node {
    std::vector<std::pair<QVector, Rational>> rows;
  };

  bool maximizing() const { return inst_.sense == MilpSense::Maximize; }

  bool improves(const Rational& bound, const Rational& incumbent) const {
    return maximizing() ? bound > incumbent : bound < incumbent;
  }

  std::size_t u_index(std::size_t i, std::size_t k) const { return i * d_ + k; }
  std::size_t p_index(std::size_t k) const { return n_ * d_ + k; }
  std::size_t nf_index() const { return nvars_ - 1; }

  QVector objective() const {
    QVector c = zero_vector(nvars_);
    c[nf_index()] = maximizing() ? 1 : -1;
    return c;
  }

  lp::Constraints base_constraints() const {
    const auto& a = inst_.config.normals;
    lp::Constraints c(nvars_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        if (i == j) continue;
        QVector row = zero_vector(nvars_);
        for (std::size_t k = 0; k < d_; ++k) {
          row[u_index(j, k)] += a[i][k];
          row[u_index(i, k)] -= a[i][k];
        }
        c.add(std::move(row), Rational(0));
      }
    for (std::size_t i = 0; i < n_; ++i) {
      QVector row = zero_vector(nvars_);
      for (std::size_t k = 0; k < d_; ++k) {
        row[p_index(k)] = a[i][k];
        row[u_index(i, k)] = -a[i][k];
      }
      row[nf_index()] = -1;
      c.add_equality(row, Rational(0));
    }
    c.add(unit_vector(nvars_, nf_index()), inst_.lower);
    c.add(-unit_vector(nvars_, nf_index()), -inst_.upper);
    for (std::size_t k = 0; k < d_; ++k) {
      c.add(unit_vector(nvars_, p_index(k)), Rational(0));
      c.add(-unit_vector(nvars_, p_index(k)), Rational(-1));
    }
    for (std::size_t v = 0; v < n_ * d_; ++v) {
      c.add(unit_vector(nvars_, v), Rational(-r_));
      c.add(-unit_vector(nvars_, v), Rational(-r_));
    }
    return c;
  }

  /// Integer-valued expression with a fractional value at x: the first
  /// fractional u coordinate, optionally preceded by the levels <a_i, u_i>
  /// (fixing all of them fixes p and n).
  std::optional<QVector> fractional_expression(const QVector& x) const {
    const auto& a = inst_.config.normals;
    for (std::size_t i = 0; i < n_ && inst_.branch_on_levels; ++i) {
      QVector e = zero_vector(nvars_);
      for (std::size_t k = 0; k < d_; ++k) e[u_index(i, k)] = a[i][k];
      if (!dot(e, x).is_integer()) return e;
    }
    for (std::size_t v = 0; v < n_ * d_; ++v)
      if (!x[v].is_integer()) return unit_vector(nvars_, v);
    return std::nullopt;
  }

  std::vector<QVector> vertices_of_point(const QVector& x) const {
    std::vector<QVector> us(n_, QVector(d_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < d_; ++k) us[i][k] = x[u_index(i, k)];
    return us;
  }

  /// <b, p> - <b, u_j> - n >= 0
  QVector disjunct_row(const QVector& b, std::size_t j) const {
    QVector row = zero_vector(nvars_);
    for (std::size_t k = 0; k < d_; ++k) {
      row[p_index(k)] = b[k];
      row[u_index(j, k)] = -b[k];
    }
    row[nf_index()] = -1;
    return row;
  }

  /// An integer functional b with <b, p> < h_P(b) + n for P = conv(u), if any.
  std::optional<QVector> violated_functional(const QVector& x) const {
    const auto us = vertices_of_point(x);
    const QVector p(x.begin() + static_cast<std::ptrdiff_t>(p_index(0)), x.begin() + static_cast<std::ptrdiff_t>(p_index(0) + d_));
    const Rational& nf = x[nf_index()];
    Polytope P = Polytope::from_points(us);
    std::vector<QVector> tests;
    if (P.is_full_dimensional()) {
      for (auto& c : relevant_candidates(P).candidates) tests.push_back(std::move(c.normal));
    } else {
      for (const auto& e : P.hull_equations()) {
        tests.push_back(e);
        tests.push_back(-e);
      }
    }
    for (const auto& b : tests)
      if (dot(b, p) < support(P, b) + nf) return b;
    return std::nullopt;
  }

  const MilpInstance& inst_;
  std::size_t d_, n_;
  long r_;
  std::size_t nvars_;
  lp::Constraints base_;
};

}  // namespace detail

inline MilpResult milp_solve(const MilpInstance& inst) {
  if (inst.lower.sign() <= 0) throw Error(Errc::InvalidArgument, "MILP lower bound L must be positive");
  if (inst.box < 0) throw Error(Errc::InvalidArgument, "MILP box must be positive");
  if (inst.lower > inst.upper) return {};
  detail::MilpSolver solver(inst);
  return solver.run();
}

}  // namespace finepoly
