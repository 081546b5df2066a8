#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "finepoly/combinatorics.hpp"
#include "finepoly/error.hpp"
#include "finepoly/linalg.hpp"
#include "finepoly/rational.hpp"

namespace finepoly::lp {

/// System of rows <normals[i], x> >= rhs[i] in R^dim.
struct Constraints {
  std::size_t dim = 0;
  std::vector<QVector> normals;
  QVector rhs;

  Constraints() = default;
  explicit Constraints(std::size_t d) : dim(d) {}
  Constraints(std::size_t d, std::vector<QVector> a, QVector b) : dim(d), normals(std::move(a)), rhs(std::move(b)) {
    if (normals.size() != rhs.size()) throw Error(Errc::DimensionMismatch, "normals/rhs count");
    for (const auto& r : normals)
      if (r.size() != dim) throw Error(Errc::DimensionMismatch, "constraint row length");
  }

  std::size_t size() const { return normals.size(); }

  void add(QVector a, Rational b) {
    if (a.size() != dim) throw Error(Errc::DimensionMismatch, "constraint row length");
    normals.push_back(std::move(a));
    rhs.push_back(std::move(b));
  }

  /// Adds <a, x> = b as the pair of opposite inequalities.
  void add_equality(const QVector& a, const Rational& b) {
    add(a, b);
    add(-a, -b);
  }

  Constraints without(std::size_t skip) const {
    Constraints c(dim);
    for (std::size_t i = 0; i < size(); ++i)
      if (i != skip) c.add(normals[i], rhs[i]);
    return c;
  }

  bool satisfied_by(const QVector& x) const {
    for (std::size_t i = 0; i < size(); ++i)
      if (dot(normals[i], x) < rhs[i]) return false;
    return true;
  }
};

enum class Sense { Minimize, Maximize };
enum class Status { Optimal, Infeasible, Unbounded };

inline std::string status_name(Status s) {
  switch (s) {
    case Status::Optimal: return "Optimal";
    case Status::Infeasible: return "Infeasible";
    case Status::Unbounded: return "Unbounded";
  }
  return "?";
}

struct LinearProgram {
  Constraints constraints;
  QVector objective;
  Sense sense = Sense::Maximize;
};

struct LpOutcome {
  Status status = Status::Infeasible;
  Rational value;  ///< meaningful when Optimal
  QVector point;   ///< meaningful when Optimal
};

namespace detail {

/**
 * Dense two-phase tableau simplex with Bland's rule for
 *   maximize f^T y  subject to  M y = g,  y >= 0.
 * M is r x N. On success the basis and the surviving (non-redundant) rows
 * are exposed so callers can recover dual multipliers.
 */
class StandardSimplex {
 public:
  enum class Result { Optimal, Infeasible, Unbounded };

  StandardSimplex(const std::vector<QVector>& m_rows, const QVector& g, const QVector& f)
      : r_(m_rows.size()), n_(f.size()), f_(f) {
    cols_ = n_ + r_;
    t_.assign(r_, zero_vector(cols_ + 1));
    for (std::size_t i = 0; i < r_; ++i) {
      const bool flip = g[i].sign() < 0;
      for (std::size_t j = 0; j < n_; ++j) t_[i][j] = flip ? -m_rows[i][j] : m_rows[i][j];
      t_[i][n_ + i] = 1;
      t_[i][cols_] = flip ? -g[i] : g[i];
    }
    basis_.resize(r_);
    for (std::size_t i = 0; i < r_; ++i) basis_[i] = n_ + i;
    row_origin_.resize(r_);
    for (std::size_t i = 0; i < r_; ++i) row_origin_[i] = i;
  }

  Result run() {
    // Phase 1: maximize -sum(artificials).
    obj_ = zero_vector(cols_ + 1);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < n_; ++j) obj_[j] += t_[i][j];
    if (iterate(cols_) == Result::Unbounded) return Result::Infeasible;  // cannot happen
    for (std::size_t i = 0; i < t_.size(); ++i)
      if (basis_[i] >= n_ && !t_[i][cols_].is_zero()) return Result::Infeasible;
    drive_out_artificials();

    // Phase 2 over the original columns only.
    obj_ = zero_vector(cols_ + 1);
    for (std::size_t j = 0; j < n_; ++j) {
      Rational d = f_[j];
      for (std::size_t i = 0; i < t_.size(); ++i) {
        if (!t_[i][j].is_zero()) d.sub_mul(f_[basis_[i]], t_[i][j]);
      }
      obj_[j] = d;
    }
    return iterate(n_);
  }

  const std::vector<std::size_t>& basis() const { return basis_; }
  const std::vector<std::size_t>& kept_rows() const { return row_origin_; }

  QVector solution() const {
    QVector y = zero_vector(n_);
    for (std::size_t i = 0; i < t_.size(); ++i)
      if (basis_[i] < n_) y[basis_[i]] = t_[i][cols_];
    return y;
  }

 private:
  Result iterate(std::size_t allowed_cols) {
    while (true) {
      std::size_t enter = allowed_cols;
      for (std::size_t j = 0; j < allowed_cols; ++j) {
        if (obj_[j].sign() > 0) {
          enter = j;
          break;
        }
      }
      if (enter == allowed_cols) return Result::Optimal;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < t_.size(); ++i) {
        if (t_[i][enter].sign() <= 0) continue;
        Rational ratio = t_[i][cols_] / t_[i][enter];
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (!leave) return Result::Unbounded;
      pivot(*leave, enter);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    Rational inv = t_[row][col].reciprocal();
    for (auto& x : t_[row])
      if (!x.is_zero()) x *= inv;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i == row || t_[i][col].is_zero()) continue;
      Rational factor = t_[i][col];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (!t_[row][j].is_zero()) t_[i][j].sub_mul(factor, t_[row][j]);
    }
    if (!obj_[col].is_zero()) {
      Rational factor = obj_[col];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (!t_[row][j].is_zero()) obj_[j].sub_mul(factor, t_[row][j]);
    }
    basis_[row] = col;
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < t_.size();) {
      if (basis_[i] < n_) {
        ++i;
        continue;
      }
      std::size_t j = 0;
      while (j < n_ && t_[i][j].is_zero()) ++j;
      if (j < n_) {
        pivot(i, j);
        ++i;
      } else {
        // Linearly dependent equality row.
        t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
        row_origin_.erase(row_origin_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  std::size_t r_, n_, cols_;
  QVector f_;
  std::vector<QVector> t_;
  QVector obj_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> row_origin_;
};

/**
 * minimize c^T x subject to A x >= b, x free, via the dual
 *   maximize b^T y subject to A^T y = c, y >= 0.
 * Primal values come back as the simplex multipliers of the dual basis.
 */
inline LpOutcome minimize(const Constraints& cons, const QVector& c) {
  const std::size_t n = cons.dim, m = cons.size();
  LpOutcome out;
  if (m == 0) {
    if (is_zero(c)) {
      out.status = Status::Optimal;
      out.value = 0;
      out.point = zero_vector(n);
    } else {
      out.status = Status::Unbounded;
    }
    return out;
  }
  std::vector<QVector> mt(n, zero_vector(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < n; ++k) mt[k][i] = cons.normals[i][k];

  StandardSimplex dual(mt, c, cons.rhs);
  auto res = dual.run();
  if (res == StandardSimplex::Result::Unbounded) {
    out.status = Status::Infeasible;
    return out;
  }
  if (res == StandardSimplex::Result::Infeasible) {
    StandardSimplex farkas(mt, zero_vector(n), cons.rhs);
    out.status = farkas.run() == StandardSimplex::Result::Unbounded ? Status::Infeasible : Status::Unbounded;
    return out;
  }

  const auto& basis = dual.basis();
  const auto& kept = dual.kept_rows();
  const std::size_t k = kept.size();
  QVector x = zero_vector(n);
  if (k > 0) {
    // Solve B^T pi = b_B on the surviving rows.
    QMatrix bt(k, k);
    QVector rhs(k);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) bt(a, b) = mt[kept[b]][basis[a]];
      rhs[a] = cons.rhs[basis[a]];
    }
    auto pi = solve_square(bt, rhs);
    if (!pi) throw Error(Errc::InvalidArgument, "singular simplex basis");
    for (std::size_t b = 0; b < k; ++b) x[kept[b]] = (*pi)[b];
  }
  out.status = Status::Optimal;
  out.value = dot(c, x);
  out.point = std::move(x);
  return out;
}

}  // namespace detail

/// Exact optimum of a linear program over rows <a_i, x> >= b_i with x free.
inline LpOutcome solve(const LinearProgram& lp) {
  if (lp.objective.size() != lp.constraints.dim) throw Error(Errc::DimensionMismatch, "objective length");
  if (lp.sense == Sense::Minimize) return detail::minimize(lp.constraints, lp.objective);
  LpOutcome o = detail::minimize(lp.constraints, -lp.objective);
  if (o.status == Status::Optimal) o.value = -o.value;
  return o;
}

inline LpOutcome maximize(const Constraints& cons, const QVector& c) {
  return solve({cons, c, Sense::Maximize});
}

inline LpOutcome minimize(const Constraints& cons, const QVector& c) {
  return solve({cons, c, Sense::Minimize});
}

inline bool is_feasible(const Constraints& cons) {
  return minimize(cons, zero_vector(cons.dim)).status != Status::Infeasible;
}

/// Row i is redundant when the other rows already imply it (or are infeasible).
inline bool is_redundant(const Constraints& cons, std::size_t i) {
  if (i >= cons.size()) throw Error(Errc::InvalidArgument, "row index out of range");
  LpOutcome o = minimize(cons.without(i), cons.normals[i]);
  if (o.status == Status::Infeasible) return true;
  if (o.status == Status::Unbounded) return false;
  return o.value >= cons.rhs[i];
}

/// Drops redundant rows one at a time; the feasible region never changes.
inline Constraints remove_redundant(const Constraints& cons) {
  Constraints cur = cons;
  for (std::size_t i = cur.size(); i-- > 0;) {
    if (is_redundant(cur, i)) cur = cur.without(i);
  }
  return cur;
}

/**
 * Vertex set of a bounded polyhedron, sorted lexicographically.
 *
 * Redundant rows are stripped first; the remaining rows are tried in all
 * dim-subsets, keeping feasible unique intersection points. Empty result for
 * an infeasible system.
 */
inline std::vector<QVector> vertices_of(const Constraints& cons) {
  const std::size_t d = cons.dim;
  for (std::size_t k = 0; k < d; ++k) {
    QVector e = unit_vector(d, k);
    for (Sense s : {Sense::Maximize, Sense::Minimize}) {
      LpOutcome o = solve({cons, e, s});
      if (o.status == Status::Infeasible) return {};
      if (o.status == Status::Unbounded) throw Error(Errc::Unbounded, "vertices_of on an unbounded system");
    }
  }
  if (d == 0) return {QVector{}};
  Constraints red = remove_redundant(cons);
  std::set<QVector> found;
  for_each_combination(red.size(), d, [&](const std::vector<std::size_t>& idx) {
    QMatrix a(d, d);
    QVector b(d);
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) a(r, c) = red.normals[idx[r]][c];
      b[r] = red.rhs[idx[r]];
    }
    if (auto x = solve_square(a, b); x && red.satisfied_by(*x)) found.insert(std::move(*x));
    return true;
  });
  return {found.begin(), found.end()};
}

}  // namespace finepoly::lp
