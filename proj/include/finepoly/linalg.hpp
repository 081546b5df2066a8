#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "finepoly/error.hpp"
#include "finepoly/rational.hpp"

namespace finepoly {

using QVector = std::vector<Rational>;
using ZVector = std::vector<Integer>;

// ---------------------------------------------------------------------------
// Vectors

inline QVector zero_vector(std::size_t n) { return QVector(n, Rational(0)); }

inline QVector unit_vector(std::size_t n, std::size_t i) {
  QVector v = zero_vector(n);
  v[i] = 1;
  return v;
}

inline void require_same_size(const QVector& a, const QVector& b) {
  if (a.size() != b.size())
    throw Error(Errc::DimensionMismatch,
                "vector sizes " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
}

inline Rational dot(const QVector& a, const QVector& b) {
  require_same_size(a, b);
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero()) s += a[i] * b[i];
  }
  return s;
}

inline QVector operator+(QVector a, const QVector& b) {
  require_same_size(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline QVector operator-(QVector a, const QVector& b) {
  require_same_size(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline QVector operator-(QVector a) {
  for (auto& x : a) x = -x;
  return a;
}

inline QVector operator*(const Rational& s, QVector a) {
  for (auto& x : a) x *= s;
  return a;
}

inline bool is_zero(const QVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

inline bool is_integral(const QVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_integer(); });
}

/// Divides an integer vector by the gcd of its entries.
inline QVector primitive(const QVector& v) {
  if (!is_integral(v)) throw Error(Errc::InvalidArgument, "primitive() needs integer entries");
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x.num());
  if (g == 0) throw Error(Errc::ZeroVector, "primitive() of the zero vector");
  QVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(Integer(x.num() / g));
  return out;
}

/// Positive rescaling of a nonzero rational vector to a primitive integer one.
inline QVector primitive_direction(const QVector& v) {
  Integer l = 1;
  for (const auto& x : v) l = lcm(l, x.den());
  QVector scaled;
  scaled.reserve(v.size());
  for (const auto& x : v) scaled.emplace_back(x * Rational(l));
  return primitive(scaled);
}

inline std::string to_string(const QVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].str();
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// Matrices

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, zero_vector(cols)) {}
  explicit QMatrix(std::vector<QVector> rows) : rows_(std::move(rows)) {
    cols_ = rows_.empty() ? 0 : rows_.front().size();
    for (const auto& r : rows_) {
      if (r.size() != cols_) throw Error(Errc::DimensionMismatch, "ragged matrix rows");
    }
  }
  QMatrix(std::vector<QVector> rows, std::size_t cols) : cols_(cols), rows_(std::move(rows)) {
    for (const auto& r : rows_) {
      if (r.size() != cols_) throw Error(Errc::DimensionMismatch, "ragged matrix rows");
    }
  }

  static QMatrix identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows() == cols(); }

  Rational& operator()(std::size_t i, std::size_t j) { return rows_[i][j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  const QVector& row(std::size_t i) const { return rows_[i]; }
  const std::vector<QVector>& row_vectors() const { return rows_; }

  QVector column(std::size_t j) const {
    QVector c;
    c.reserve(rows());
    for (const auto& r : rows_) c.push_back(r[j]);
    return c;
  }

  QMatrix transpose() const {
    QMatrix t(cols(), rows());
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j) t(j, i) = rows_[i][j];
    return t;
  }

  QVector operator*(const QVector& x) const {
    if (x.size() != cols_) throw Error(Errc::DimensionMismatch, "matrix-vector product");
    QVector y;
    y.reserve(rows());
    for (const auto& r : rows_) y.push_back(dot(r, x));
    return y;
  }

  QMatrix operator*(const QMatrix& o) const {
    if (cols() != o.rows()) throw Error(Errc::DimensionMismatch, "matrix product");
    QMatrix p(rows(), o.cols());
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t k = 0; k < cols(); ++k) {
        if (rows_[i][k].is_zero()) continue;
        for (std::size_t j = 0; j < o.cols(); ++j) p(i, j) += rows_[i][k] * o(k, j);
      }
    return p;
  }

  /// Copy with row `skip` removed.
  QMatrix without_row(std::size_t skip) const {
    std::vector<QVector> r;
    for (std::size_t i = 0; i < rows(); ++i)
      if (i != skip) r.push_back(rows_[i]);
    return QMatrix(std::move(r), cols_);
  }

  /// Copy with `c` appended as a new last column.
  QMatrix with_column(const QVector& c) const {
    if (c.size() != rows()) throw Error(Errc::DimensionMismatch, "appended column length");
    std::vector<QVector> r = rows_;
    for (std::size_t i = 0; i < r.size(); ++i) r[i].push_back(c[i]);
    return QMatrix(std::move(r), cols_ + 1);
  }

  bool is_integral() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const QVector& r) { return finepoly::is_integral(r); });
  }

  friend bool operator==(const QMatrix&, const QMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<QVector> rows_;
};

// ---------------------------------------------------------------------------
// Determinant (Bareiss)

namespace detail {

using ZMatrix = std::vector<ZVector>;

inline ZMatrix to_integer_rows(const QMatrix& m, Integer& scale) {
  ZMatrix z(m.rows(), ZVector(m.cols()));
  scale = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) l = lcm(l, m(i, j).den());
    scale *= l;
    for (std::size_t j = 0; j < m.cols(); ++j) z[i][j] = m(i, j).num() * (l / m(i, j).den());
  }
  return z;
}

inline Integer bareiss(ZMatrix a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace detail

/// Exact determinant. Rows are cleared of denominators and fed to Bareiss's
/// fraction-free elimination, so intermediate entries stay integral.
inline Rational det(const QMatrix& m) {
  if (!m.is_square()) throw Error(Errc::NonSquare, "det of a " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " matrix");
  Integer scale;
  auto z = detail::to_integer_rows(m, scale);
  return Rational(detail::bareiss(std::move(z)), scale);
}

// ---------------------------------------------------------------------------
// Gaussian elimination over Q

struct Echelon {
  QMatrix reduced;                    ///< reduced row echelon form
  std::vector<std::size_t> pivots;    ///< pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

inline Echelon rref(QMatrix m) {
  Echelon e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    }
    Rational inv = m(r, c).reciprocal();
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j).sub_mul(f, m(r, j));
    }
    e.pivots.push_back(c);
    ++r;
  }
  e.reduced = std::move(m);
  return e;
}

inline std::size_t rank(const QMatrix& m) { return rref(m).rank(); }

inline std::size_t rank(const std::vector<QVector>& rows, std::size_t cols) {
  if (rows.empty()) return 0;
  return rank(QMatrix(rows, cols));
}

/// Basis of { x : M x = 0 }.
inline std::vector<QVector> nullspace(const QMatrix& m) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<QVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    QVector v = zero_vector(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Unique solution of a square nonsingular system, or nullopt when singular.
inline std::optional<QVector> solve_square(const QMatrix& m, const QVector& b) {
  if (!m.is_square() || b.size() != m.rows()) throw Error(Errc::DimensionMismatch, "solve_square");
  const std::size_t n = m.cols();
  if (n == 0) return QVector{};
  Echelon e = rref(m.with_column(b));
  if (e.rank() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  QVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = e.reduced(i, n);
  return x;
}

/// Dimension of the affine hull of a nonempty point set (-1 for empty).
inline int affine_dimension(const std::vector<QVector>& pts) {
  if (pts.empty()) return -1;
  std::vector<QVector> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
  return static_cast<int>(rank(diffs, pts[0].size()));
}

// ---------------------------------------------------------------------------
// Hermite normal form

struct HermiteForm {
  QMatrix h;  ///< row-style HNF: echelon, positive pivots, reduced above pivots
  QMatrix u;  ///< unimodular transform with u * input == h
  std::vector<std::size_t> pivots;
};

/**
 * Row-style Hermite normal form of an integer matrix.
 *
 * Only unimodular row operations are applied, so the row lattice is kept.
 * Pivot entries are positive and entries above a pivot lie in [0, pivot).
 */
inline HermiteForm hermite_normal_form(const QMatrix& a) {
  if (!a.is_integral()) throw Error(Errc::InvalidArgument, "HNF needs an integer matrix");
  const std::size_t m = a.rows(), n = a.cols();
  detail::ZMatrix h(m, ZVector(n)), u(m, ZVector(m, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) h[i][j] = a(i, j).num();
    u[i][i] = 1;
  }
  auto combine = [](ZVector& x, ZVector& y, const Integer& p, const Integer& q, const Integer& r,
                    const Integer& s) {
    // (x, y) <- (p x + q y, r x + s y)
    for (std::size_t k = 0; k < x.size(); ++k) {
      Integer nx = p * x[k] + q * y[k];
      Integer ny = r * x[k] + s * y[k];
      x[k] = std::move(nx);
      y[k] = std::move(ny);
    }
  };
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && h[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(h[p], h[r]);
    std::swap(u[p], u[r]);
    for (std::size_t i = r + 1; i < m; ++i) {
      if (h[i][c] == 0) continue;
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h[r][c].get_mpz_t(), h[i][c].get_mpz_t());
      Integer a_g = h[r][c] / g, b_g = h[i][c] / g;
      // det [[s, t], [-b_g, a_g]] = s a_g + t b_g = 1
      combine(h[r], h[i], s, t, -b_g, a_g);
      combine(u[r], u[i], s, t, -b_g, a_g);
    }
    if (h[r][c] < 0) {
      for (auto& x : h[r]) x = -x;
      for (auto& x : u[r]) x = -x;
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer f = floor_div(h[i][c], h[r][c]);
      if (f == 0) continue;
      for (std::size_t k = 0; k < n; ++k) h[i][k] -= f * h[r][k];
      for (std::size_t k = 0; k < m; ++k) u[i][k] -= f * u[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  auto to_q = [](const detail::ZMatrix& z, std::size_t cols) {
    std::vector<QVector> rows;
    for (const auto& zr : z) {
      QVector qr;
      for (const auto& x : zr) qr.emplace_back(x);
      rows.push_back(std::move(qr));
    }
    return QMatrix(std::move(rows), cols);
  };
  return {to_q(h, n), to_q(u, m), std::move(pivots)};
}

/**
 * Unimodular U such that the last (n - rank K) rows of U annihilate the
 * columns of the n x k integer matrix K and form a basis of the dual lattice
 * of the quotient. The map x -> (those rows) x is then a lattice-preserving
 * projection Z^n -> Z^(n - rank K) whose kernel is the saturation of span(K).
 */
inline QMatrix integer_kernel_complement(const QMatrix& k) {
  const std::size_t n = k.rows();
  if (k.cols() == 0 || n == 0) return QMatrix::identity(n);
  QMatrix scaled = k;
  // Column scaling does not change the spanned subspace; clear denominators.
  for (std::size_t j = 0; j < k.cols(); ++j) {
    Integer l = 1;
    for (std::size_t i = 0; i < n; ++i) l = lcm(l, k(i, j).den());
    for (std::size_t i = 0; i < n; ++i) scaled(i, j) = k(i, j) * Rational(l);
  }
  return hermite_normal_form(scaled).u;
}

/// Rows of integer_kernel_complement that span the projection.
inline QMatrix lattice_projection_killing(const QMatrix& k) {
  QMatrix u = integer_kernel_complement(k);
  const std::size_t r = k.cols() == 0 ? 0 : rank(k);
  std::vector<QVector> rows(u.row_vectors().begin() + static_cast<std::ptrdiff_t>(r), u.row_vectors().end());
  return QMatrix(std::move(rows), k.rows());
}

}  // namespace finepoly
