#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "momentkit/errors.hpp"
#include "momentkit/types.hpp"

namespace momentkit {

template <typename Scalar>
struct SymmetricEigenResult {
  VectorX<Scalar> eigenvalues;   // ascending
  MatrixX<Scalar> eigenvectors;  // columns, ordered to match
  Index sweeps = 0;
};

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Stops when the off-diagonal Frobenius norm drops below
/// rel_off_tol * ||A||_F. Eigenvalues come back sorted ascending with
/// matching eigenvector columns.
template <typename Scalar>
SymmetricEigenResult<Scalar> jacobiEigenSolve(MatrixX<Scalar> a, Scalar rel_off_tol = Scalar(1e-12),
                                              Index max_sweeps = 100) {
  const Index n = a.rows();
  if (n != a.cols()) throw InvalidArgument("jacobiEigenSolve: matrix must be square");
  SymmetricEigenResult<Scalar> out;
  if (n == 0) {
    out.eigenvalues.resize(0);
    out.eigenvectors.resize(0, 0);
    return out;
  }

  const Scalar norm = a.norm();
  const Scalar off_target = rel_off_tol * std::max(norm, Scalar(1e-300));
  MatrixX<Scalar> v = MatrixX<Scalar>::Identity(n, n);

  auto off_norm = [&]() {
    Scalar s(0);
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    }
    return std::sqrt(Scalar(2) * s);
  };

  for (out.sweeps = 0; out.sweeps < max_sweeps && off_norm() > off_target; ++out.sweeps) {
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        if (std::abs(apq) <= Scalar(0.01) * off_target / Scalar(n)) continue;
        // Classic two-sided rotation choosing the smaller angle root.
        const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
        const Scalar t = (theta >= Scalar(0) ? Scalar(1) : Scalar(-1)) /
                         (std::abs(theta) + std::sqrt(theta * theta + Scalar(1)));
        const Scalar c = Scalar(1) / std::sqrt(t * t + Scalar(1));
        const Scalar s = t * c;
        for (Index k = 0; k < n; ++k) {
          const Scalar akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Index k = 0; k < n; ++k) {
          const Scalar apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Index k = 0; k < n; ++k) {
          const Scalar vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (off_norm() > off_target) {
    throw NonConvergence("jacobiEigenSolve: off-diagonal norm stalled after " +
                         std::to_string(max_sweeps) + " sweeps");
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index(0));
  std::sort(order.begin(), order.end(), [&](Index i, Index j) { return a(i, i) < a(j, j); });

  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Index j = 0; j < n; ++j) {
    out.eigenvalues(j) = a(order[static_cast<std::size_t>(j)], order[static_cast<std::size_t>(j)]);
    out.eigenvectors.col(j) = v.col(order[static_cast<std::size_t>(j)]);
  }
  return out;
}

}  // namespace momentkit
