#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "momentkit/errors.hpp"
#include "momentkit/types.hpp"

namespace momentkit {

template <typename Scalar>
struct TridiagonalEigenResult {
  VectorX<Scalar> eigenvalues;       // ascending
  VectorX<Scalar> first_components;  // first row of the eigenvector matrix, matching order
};

/// Eigenvalues of a symmetric tridiagonal matrix by the implicit-shift QL
/// algorithm with Wilkinson shifts. Only the first component of each
/// eigenvector is accumulated, which is all Gaussian quadrature needs.
template <typename Scalar>
TridiagonalEigenResult<Scalar> tridiagonalEigenSolve(VectorX<Scalar> diag,
                                                     VectorX<Scalar> offdiag,
                                                     Index max_iterations = 60) {
  const Index n = diag.size();
  if (offdiag.size() != std::max<Index>(n - 1, 0)) {
    throw InvalidArgument("tridiagonalEigenSolve: off-diagonal must have size n-1");
  }
  TridiagonalEigenResult<Scalar> out;
  if (n == 0) {
    out.eigenvalues.resize(0);
    out.first_components.resize(0);
    return out;
  }

  // e holds the subdiagonal shifted up one slot, classic QL layout.
  VectorX<Scalar> d = std::move(diag);
  VectorX<Scalar> e = VectorX<Scalar>::Zero(n);
  for (Index i = 1; i < n; ++i) e(i - 1) = offdiag(i - 1);

  // z starts as e_1; rotations applied to it track first eigenvector rows.
  VectorX<Scalar> z = VectorX<Scalar>::Zero(n);
  z(0) = Scalar(1);

  auto pythag = [](Scalar a, Scalar b) {
    const Scalar absa = std::abs(a), absb = std::abs(b);
    if (absa > absb) {
      const Scalar r = absb / absa;
      return absa * std::sqrt(Scalar(1) + r * r);
    }
    if (absb == Scalar(0)) return Scalar(0);
    const Scalar r = absa / absb;
    return absb * std::sqrt(Scalar(1) + r * r);
  };

  for (Index l = 0; l < n; ++l) {
    Index iter = 0;
    Index m;
    do {
      for (m = l; m < n - 1; ++m) {
        const Scalar dd = std::abs(d(m)) + std::abs(d(m + 1));
        if (std::abs(e(m)) <= std::numeric_limits<Scalar>::epsilon() * dd) break;
      }
      if (m != l) {
        if (iter++ == max_iterations) {
          throw NonConvergence("tridiagonalEigenSolve: QL iteration stalled");
        }
        Scalar g = (d(l + 1) - d(l)) / (Scalar(2) * e(l));  // Wilkinson shift
        Scalar r = pythag(g, Scalar(1));
        g = d(m) - d(l) + e(l) / (g + (g >= Scalar(0) ? std::abs(r) : -std::abs(r)));
        Scalar s(1), c(1), p(0);
        Index i;
        for (i = m - 1; i >= l; --i) {
          Scalar f = s * e(i);
          const Scalar b = c * e(i);
          r = pythag(f, g);
          e(i + 1) = r;
          if (r == Scalar(0)) {
            d(i + 1) -= p;
            e(m) = Scalar(0);
            break;
          }
          s = f / r;
          c = g / r;
          g = d(i + 1) - p;
          r = (d(i) - g) * s + Scalar(2) * c * b;
          p = s * r;
          d(i + 1) = g + p;
          g = c * r - b;
          const Scalar zi = z(i), zi1 = z(i + 1);
          z(i + 1) = s * zi + c * zi1;
          z(i) = c * zi - s * zi1;
        }
        if (r == Scalar(0) && i >= l) continue;
        d(l) -= p;
        e(l) = g;
        e(m) = Scalar(0);
      }
    } while (m != l);
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index(0));
  std::sort(order.begin(), order.end(), [&](Index i, Index j) { return d(i) < d(j); });

  out.eigenvalues.resize(n);
  out.first_components.resize(n);
  for (Index j = 0; j < n; ++j) {
    out.eigenvalues(j) = d(order[static_cast<std::size_t>(j)]);
    out.first_components(j) = z(order[static_cast<std::size_t>(j)]);
  }
  return out;
}

}  // namespace momentkit
