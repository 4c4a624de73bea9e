#pragma once

#include <optional>
#include <utility>

#include "momentkit/errors.hpp"
#include "momentkit/polynomial.hpp"
#include "momentkit/symmetric_eigen.hpp"
#include "momentkit/types.hpp"

namespace momentkit {

/// Finite real sequence s_0..s_m, candidate truncated moment data.
/// Requires at least one entry and s_0 > 0.
template <typename Scalar>
class MomentSequence {
 public:
  explicit MomentSequence(VectorX<Scalar> moments) : moments_(std::move(moments)) {
    if (moments_.size() < 1) {
      throw InvalidArgument("MomentSequence: need at least s_0");
    }
    if (!(moments_(0) > Scalar(0))) {
      throw InvalidArgument("MomentSequence: s_0 must be positive");
    }
  }

  MomentSequence(std::initializer_list<Scalar> moments)
      : MomentSequence(VectorX<Scalar>(Eigen::Map<const VectorX<Scalar>>(
            moments.begin(), static_cast<Index>(moments.size())))) {}

  const VectorX<Scalar>& moments() const { return moments_; }
  Scalar operator[](Index k) const { return moments_(k); }
  /// Highest available order m (moments are s_0..s_m).
  Index maxOrder() const { return moments_.size() - 1; }

 private:
  VectorX<Scalar> moments_;
};

/// (N+1)x(N+1) symmetric matrix with entry(i,j) = s_{i+j}.
template <typename Scalar>
struct HankelMatrix {
  MatrixX<Scalar> entries;
  Index order() const { return entries.rows(); }
};

template <typename Scalar>
struct PsdVerdict {
  bool is_psd = false;
  Scalar min_eigenvalue = Scalar(0);
  /// Unit eigenvector for the minimal eigenvalue when is_psd is false;
  /// satisfies c^T H c = min_eigenvalue < 0.
  std::optional<VectorX<Scalar>> witness;
};

template <typename Scalar>
HankelMatrix<Scalar> buildHankel(const MomentSequence<Scalar>& s, Index n) {
  if (n < 0) throw InvalidArgument("buildHankel: N must be nonnegative");
  if (2 * n > s.maxOrder()) {
    throw InsufficientMoments("buildHankel: order " + std::to_string(n) + " needs moments up to s_" +
                              std::to_string(2 * n) + ", have s_" + std::to_string(s.maxOrder()));
  }
  HankelMatrix<Scalar> h;
  h.entries.resize(n + 1, n + 1);
  for (Index i = 0; i <= n; ++i) {
    for (Index j = 0; j <= n; ++j) h.entries(i, j) = s[i + j];
  }
  return h;
}

/// PSD test with relative tolerance: accepts iff
/// lambda_min >= -tol * max(1, lambda_max). On rejection the witness is the
/// minimal eigenvector, sign-fixed so its first nonzero component is positive.
template <typename Scalar>
PsdVerdict<Scalar> checkPsd(const HankelMatrix<Scalar>& h, Scalar tol = Scalar(1e-9)) {
  if (tol < Scalar(0)) throw InvalidArgument("checkPsd: tol must be nonnegative");
  const auto eig = jacobiEigenSolve<Scalar>(h.entries);
  PsdVerdict<Scalar> verdict;
  verdict.min_eigenvalue = eig.eigenvalues(0);
  const Scalar lambda_max = eig.eigenvalues(eig.eigenvalues.size() - 1);
  verdict.is_psd = verdict.min_eigenvalue >= -tol * std::max(Scalar(1), lambda_max);
  if (!verdict.is_psd) {
    VectorX<Scalar> w = eig.eigenvectors.col(0);
    for (Index k = 0; k < w.size(); ++k) {
      if (w(k) != Scalar(0)) {
        if (w(k) < Scalar(0)) w = -w;
        break;
      }
    }
    verdict.witness = std::move(w);
  }
  return verdict;
}

/// Hamburger criterion at the largest admissible order N = floor(m/2).
/// A false verdict certifies via the witness that no representing measure
/// exists: L[(sum c_k x^k)^2] = c^T H c < 0.
template <typename Scalar>
PsdVerdict<Scalar> hamburgerCheck(const MomentSequence<Scalar>& s, Scalar tol = Scalar(1e-9)) {
  return checkPsd(buildHankel(s, s.maxOrder() / 2), tol);
}

/// L(f) = sum_j c_j s_j, the moment functional on polynomials.
template <typename Scalar>
Scalar applyFunctional(const MomentSequence<Scalar>& s, const Polynomial<Scalar>& f) {
  if (f.degree() > s.maxOrder()) {
    throw DegreeTooHigh("applyFunctional: polynomial degree " + std::to_string(f.degree()) +
                        " exceeds available moment order " + std::to_string(s.maxOrder()));
  }
  Scalar acc(0);
  for (Index j = 0; j < f.coeffs().size(); ++j) acc += f.coeff(j) * s[j];
  return acc;
}

}  // namespace momentkit
