#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "finepoly/combinatorics.hpp"
#include "finepoly/error.hpp"
#include "finepoly/linalg.hpp"
#include "finepoly/lp.hpp"
#include "finepoly/polytope.hpp"
#include "finepoly/rational.hpp"

namespace finepoly {

/// Valid inequality <normal, x> >= rhs with rhs = h_P(normal).
struct Candidate {
  QVector normal;
  Rational rhs;
};

/// A polytope together with a superset of its relevant inequalities.
struct FineSystem {
  Polytope base;
  std::vector<Candidate> candidates;

  std::size_t dim() const { return base.ambient_dim(); }
};

struct FineProfile {
  Rational fine_number;                ///< n^F
  Rational mu_f;                       ///< 1 / n^F
  std::vector<QVector> core_vertices;  ///< sorted
  int core_dim = 0;
  std::vector<QVector> core_normals;   ///< subset of the candidates, in candidate order
};

/**
 * Nonzero lattice points of conv(primitive facet normals of P), each with its
 * support value. Every relevant inequality of P is among them.
 */
inline FineSystem relevant_candidates(const Polytope& p) {
  const HRep& f = p.facets();
  Polytope normals = Polytope::from_points(f.normals);
  FineSystem sys{p, {}};
  for (auto& a : lattice_points(normals)) {
    if (is_zero(a)) continue;
    Rational h = support(p, a);
    sys.candidates.push_back({std::move(a), std::move(h)});
  }
  return sys;
}

/// Rows (a | -1)(x, s) >= h_P(a) for every candidate, followed by s >= 0.
inline lp::Constraints mountain(const FineSystem& sys) {
  const std::size_t d = sys.dim();
  lp::Constraints c(d + 1);
  for (const auto& cand : sys.candidates) {
    QVector row = cand.normal;
    row.push_back(Rational(-1));
    c.add(std::move(row), cand.rhs);
  }
  c.add(unit_vector(d + 1, d), Rational(0));
  return c;
}

/// Candidate rows shifted by s: the H-description of P^{F(s)}.
inline lp::Constraints adjoint_constraints(const FineSystem& sys, const Rational& s) {
  lp::Constraints c(sys.dim());
  for (const auto& cand : sys.candidates) c.add(cand.normal, cand.rhs + s);
  return c;
}

inline bool is_relevant(const FineSystem& sys, std::size_t i) {
  if (i >= sys.candidates.size()) throw Error(Errc::InvalidArgument, "candidate index out of range");
  return !lp::is_redundant(mountain(sys), i);
}

/// Copy of sys keeping only the candidates with keep[i] set.
inline FineSystem restrict_candidates(const FineSystem& sys, const std::vector<bool>& keep) {
  FineSystem out{sys.base, {}};
  for (std::size_t i = 0; i < sys.candidates.size(); ++i)
    if (keep.at(i)) out.candidates.push_back(sys.candidates[i]);
  return out;
}

/// Height of the Fine mountain.
inline Rational fine_number(const FineSystem& sys) {
  lp::LpOutcome o = lp::maximize(mountain(sys), unit_vector(sys.dim() + 1, sys.dim()));
  if (o.status != lp::Status::Optimal)
    throw Error(Errc::InvalidArgument, "Fine mountain LP ended " + lp::status_name(o.status));
  return o.value;
}

/// P^{F(s)}, or nullopt when it is empty.
inline std::optional<Polytope> fine_adjoint(const FineSystem& sys, const Rational& s) {
  if (s.sign() <= 0) throw Error(Errc::InvalidArgument, "adjoint parameter must be positive");
  auto vs = lp::vertices_of(adjoint_constraints(sys, s));
  if (vs.empty()) return std::nullopt;
  return Polytope::from_points(std::move(vs));
}

inline std::optional<Polytope> fine_adjoint(const Polytope& p, const Rational& s) {
  return fine_adjoint(relevant_candidates(p), s);
}

inline FineProfile fine_profile(const FineSystem& sys) {
  FineProfile prof;
  prof.fine_number = fine_number(sys);
  if (prof.fine_number.sign() <= 0) throw Error(Errc::NotFullDim, "Fine number is zero");
  prof.mu_f = prof.fine_number.reciprocal();

  // The irredundant rows describe the same core; the LPs below run on them.
  lp::Constraints core = lp::remove_redundant(adjoint_constraints(sys, prof.fine_number));
  prof.core_vertices = lp::vertices_of(core);
  prof.core_dim = affine_dimension(prof.core_vertices);

  for (const auto& cand : sys.candidates) {
    const Rational level = cand.rhs + prof.fine_number;
    lp::LpOutcome lo = lp::minimize(core, cand.normal);
    if (lo.status != lp::Status::Optimal || lo.value != level) continue;
    lp::LpOutcome hi = lp::maximize(core, cand.normal);
    if (hi.status == lp::Status::Optimal && hi.value == level) prof.core_normals.push_back(cand.normal);
  }
  return prof;
}

inline FineProfile fine_profile(const Polytope& p) { return fine_profile(relevant_candidates(p)); }

/// Whether a satisfies <a, x> = h_P(a) + n^F on the whole core.
inline bool is_core_normal(const Polytope& p, const FineProfile& prof, const QVector& a) {
  const Rational level = support(p, a) + prof.fine_number;
  for (const auto& v : prof.core_vertices)
    if (dot(a, v) != level) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Projections

struct Projection {
  Polytope image;
  QMatrix map;  ///< integer matrix; image = map(P)
};

/**
 * Projects P along the linear space parallel to its Fine core, using a
 * lattice-preserving map Z^d -> Z^(d - core_dim). The image has the same
 * Fine Q-codegree and a single point as core.
 */
inline Projection natural_projection(const Polytope& p, const FineProfile& prof) {
  const std::size_t d = p.ambient_dim();
  if (prof.core_dim == 0) return {p, QMatrix::identity(d)};
  std::vector<QVector> dirs;
  for (std::size_t i = 1; i < prof.core_vertices.size(); ++i)
    dirs.push_back(prof.core_vertices[i] - prof.core_vertices[0]);
  QMatrix k = QMatrix(dirs, d).transpose();
  QMatrix pi = lattice_projection_killing(k);
  return {linear_image(p, pi), pi};
}

inline Projection natural_projection(const Polytope& p) { return natural_projection(p, fine_profile(p)); }

/**
 * Looks for a positive dependence sum lambda_i a_i = 0 among at most d core
 * normals (smallest support first). For such a circuit a_0..a_l, P maps to
 * x -> (<a_1, x>, ..., <a_l, x>) expressed in a basis of the image lattice.
 */
inline std::optional<Projection> circuit_reduction(const Polytope& p, const FineProfile& prof) {
  const std::size_t d = p.ambient_dim();
  const auto& normals = prof.core_normals;
  std::optional<std::vector<std::size_t>> found;
  for (std::size_t size = 2; size <= d && !found; ++size) {
    for_each_combination(normals.size(), size, [&](const std::vector<std::size_t>& idx) {
      // lambda >= 1, sum lambda_i a_i = 0
      lp::Constraints c(size);
      for (std::size_t i = 0; i < size; ++i) c.add(unit_vector(size, i), Rational(1));
      for (std::size_t k = 0; k < d; ++k) {
        QVector row(size);
        for (std::size_t i = 0; i < size; ++i) row[i] = normals[idx[i]][k];
        c.add_equality(row, Rational(0));
      }
      if (!lp::is_feasible(c)) return true;
      found = idx;
      return false;
    });
  }
  if (!found) return std::nullopt;

  const std::size_t l = found->size() - 1;
  std::vector<QVector> rows;
  for (std::size_t i = 1; i <= l; ++i) rows.push_back(normals[(*found)[i]]);
  QMatrix m(rows, d);
  // Basis of the column lattice of m: nonzero rows of HNF(m^T).
  HermiteForm hf = hermite_normal_form(m.transpose());
  QMatrix basis(l, l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) basis(j, i) = hf.h(i, j);
  // coordinates c with basis * c = m x
  QMatrix coords(l, d);
  for (std::size_t k = 0; k < d; ++k) {
    auto c = solve_square(basis, m.column(k));
    if (!c) throw Error(Errc::InvalidArgument, "circuit normals are dependent");
    for (std::size_t i = 0; i < l; ++i) coords(i, k) = (*c)[i];
  }
  return Projection{linear_image(p, coords), coords};
}

inline std::optional<Projection> circuit_reduction(const Polytope& p) { return circuit_reduction(p, fine_profile(p)); }

// ---------------------------------------------------------------------------
// Closed forms and lattice changes

/// mu^F of the lattice pyramid over P: max{2, mu^F(P) + 1}. Lattice P only.
inline Rational pyramid_mu(const Polytope& p) {
  if (!p.is_lattice()) throw Error(Errc::LatticeRequired, "pyramid formula needs a lattice polytope");
  return max(Rational(2), fine_profile(p).mu_f + Rational(1));
}

/// mu^F of P with respect to the sublattice kZ x Z^(d-1).
inline Rational mu_under_sublattice(const Polytope& p, long k) {
  if (k < 1) throw Error(Errc::InvalidArgument, "sublattice index must be positive");
  QMatrix scale = QMatrix::identity(p.ambient_dim());
  scale(0, 0) = Rational(Integer(1), Integer(k));
  return fine_profile(linear_image(p, scale)).mu_f;
}

}  // namespace finepoly
