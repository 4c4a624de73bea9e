#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "momentkit/errors.hpp"
#include "momentkit/moments.hpp"
#include "momentkit/polynomial.hpp"
#include "momentkit/tridiagonal_eigen.hpp"
#include "momentkit/types.hpp"

namespace momentkit {

/// Cholesky pivots below kRankTolFactor times the largest pivot seen so far
/// mark the numerical rank: the source measure has that many atoms.
inline constexpr double kRankTolFactor = 1e-10;

/// Symmetric tridiagonal three-term recurrence matrix: diag alpha_0..alpha_{N-1},
/// offdiag beta_1..beta_{N-1}, all beta strictly positive.
template <typename Scalar>
struct JacobiMatrix {
  VectorX<Scalar> diag;
  VectorX<Scalar> offdiag;
  Index size() const { return diag.size(); }
};

/// Finitely many (node, weight) atoms, nodes strictly increasing, weights
/// positive. Total mass equals s_0 of the source sequence.
template <typename Scalar>
struct AtomicMeasure {
  struct Atom {
    Scalar node;
    Scalar weight;
  };
  std::vector<Atom> atoms;

  Scalar mass() const {
    Scalar total(0);
    for (const Atom& a : atoms) total += a.weight;
    return total;
  }
};

namespace detail {

/// Rows 0..size-1 of the upper-triangular Cholesky factor of the Hankel
/// matrix H(i,j) = s_{i+j}, computed against columns 0..size. Throws
/// RankDeficient(r) when pivot r falls below the rank tolerance.
template <typename Scalar>
MatrixX<Scalar> partialHankelCholesky(const MomentSequence<Scalar>& s, Index size) {
  const Index cols = size + 1;
  MatrixX<Scalar> r = MatrixX<Scalar>::Zero(size, cols);
  Scalar max_pivot(0);
  for (Index i = 0; i < size; ++i) {
    Scalar pivot = s[2 * i];
    for (Index k = 0; k < i; ++k) pivot -= r(k, i) * r(k, i);
    if (pivot <= Scalar(kRankTolFactor) * max_pivot) {
      throw RankDeficient(i, "moment data has numerical rank " + std::to_string(i));
    }
    max_pivot = std::max(max_pivot, pivot);
    r(i, i) = std::sqrt(pivot);
    for (Index j = i + 1; j < cols; ++j) {
      Scalar v = s[i + j];
      for (Index k = 0; k < i; ++k) v -= r(k, i) * r(k, j);
      r(i, j) = v / r(i, i);
    }
  }
  return r;
}

/// Jacobi matrix of the first `size` orthogonal polynomials of s, read off
/// the partial Cholesky factor: alpha_k = R(k,k+1)/R(k,k) - R(k-1,k)/R(k-1,k-1),
/// beta_k = R(k,k)/R(k-1,k-1).
template <typename Scalar>
JacobiMatrix<Scalar> jacobiOfSize(const MomentSequence<Scalar>& s, Index size) {
  const MatrixX<Scalar> r = partialHankelCholesky(s, size);
  JacobiMatrix<Scalar> j;
  j.diag.resize(size);
  j.offdiag.resize(std::max<Index>(size - 1, 0));
  for (Index k = 0; k < size; ++k) {
    j.diag(k) = r(k, k + 1) / r(k, k);
    if (k > 0) {
      j.diag(k) -= r(k - 1, k) / r(k - 1, k - 1);
      j.offdiag(k - 1) = r(k, k) / r(k - 1, k - 1);
    }
  }
  return j;
}

}  // namespace detail

/// Recurrence coefficients for the largest Jacobi matrix the sequence
/// supports: N = floor((m+1)/2), using moments through s_{2N-1}. Throws
/// RankDeficient(r) when the underlying measure has only r < N atoms.
template <typename Scalar>
JacobiMatrix<Scalar> jacobiFromMoments(const MomentSequence<Scalar>& s) {
  return detail::jacobiOfSize(s, (s.maxOrder() + 1) / 2);
}

/// Gauss quadrature for the moment functional: nodes are Jacobi-matrix
/// eigenvalues, weight_i = s_0 * (first eigenvector component)^2. When the
/// moment data is rank deficient the Jacobi matrix is truncated to the
/// detected rank, so finitely-atomic sources reproduce every available
/// moment. Throws NotAMomentSequence when the Hankel test fails.
template <typename Scalar>
AtomicMeasure<Scalar> recoverMeasure(const MomentSequence<Scalar>& s, Scalar tol = Scalar(1e-9)) {
  const PsdVerdict<Scalar> verdict = hamburgerCheck(s, tol);
  if (!verdict.is_psd) {
    throw NotAMomentSequence("recoverMeasure: Hankel matrix has eigenvalue " +
                             std::to_string(verdict.min_eigenvalue));
  }
  JacobiMatrix<Scalar> jac;
  try {
    jac = jacobiFromMoments(s);
  } catch (const RankDeficient& rd) {
    jac = detail::jacobiOfSize(s, rd.rank());
  }
  const auto eig = tridiagonalEigenSolve<Scalar>(jac.diag, jac.offdiag);
  AtomicMeasure<Scalar> mu;
  mu.atoms.reserve(static_cast<std::size_t>(eig.eigenvalues.size()));
  for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const Scalar w = s[0] * eig.first_components(i) * eig.first_components(i);
    mu.atoms.push_back({eig.eigenvalues(i), w});
  }
  return mu;
}

/// Sum w_i * f(node_i); Gauss-exact for deg f <= 2N-1.
template <typename Scalar>
Scalar integrate(const AtomicMeasure<Scalar>& mu, const Polynomial<Scalar>& f) {
  Scalar acc(0);
  for (const auto& atom : mu.atoms) acc += atom.weight * f(atom.node);
  return acc;
}

/// Per-order comparison of a measure's moments against a target sequence.
/// An order passes when |error| <= tol * max(1, |s_k|).
template <typename Scalar>
struct MomentReport {
  struct Entry {
    Index k;
    Scalar measure_moment;
    Scalar target;
    Scalar abs_error;
    bool pass;
  };
  std::vector<Entry> entries;
  bool all_pass = true;
};

template <typename Scalar>
MomentReport<Scalar> verifyMoments(const AtomicMeasure<Scalar>& mu, const MomentSequence<Scalar>& s,
                                   Index k_max, Scalar tol = Scalar(1e-8)) {
  if (k_max < 0 || k_max > s.maxOrder()) {
    throw InvalidArgument("verifyMoments: k_max must lie in [0, m]");
  }
  MomentReport<Scalar> report;
  std::vector<Scalar> powers(mu.atoms.size(), Scalar(1));
  for (Index k = 0; k <= k_max; ++k) {
    Scalar mk(0);
    for (std::size_t i = 0; i < mu.atoms.size(); ++i) {
      if (k > 0) powers[i] *= mu.atoms[i].node;
      mk += mu.atoms[i].weight * powers[i];
    }
    const Scalar err = std::abs(mk - s[k]);
    const bool pass = err <= tol * std::max(Scalar(1), std::abs(s[k]));
    report.entries.push_back({k, mk, s[k], err, pass});
    report.all_pass = report.all_pass && pass;
  }
  return report;
}

}  // namespace momentkit
