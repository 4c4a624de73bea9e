#pragma once

#include <algorithm>
#include <initializer_list>
#include <limits>
#include <ostream>

#include "momentkit/errors.hpp"
#include "momentkit/types.hpp"

namespace momentkit {

/// degree() of the identically-zero polynomial.
inline constexpr Index kZeroPolynomialDegree = std::numeric_limits<Index>::min();

/// Leading coefficients with |c_d| <= kCoeffStripTol * max_j |c_j| are
/// stripped when a polynomial is brought into canonical form, so arithmetic
/// that cancels the top term exactly does not inflate the degree.
inline constexpr double kCoeffStripTol = 1e-13;

/// Dense univariate polynomial, coefficients stored lowest order first
/// (coeffs()[j] multiplies x^j). Instances are immutable values and always
/// canonical: the stored leading coefficient is nonzero relative to the
/// largest coefficient, or the coefficient vector is empty (zero polynomial).
template <typename Scalar>
class Polynomial {
 public:
  Polynomial() = default;

  explicit Polynomial(VectorX<Scalar> coeffs) : coeffs_(std::move(coeffs)) { canonicalize(); }

  Polynomial(std::initializer_list<Scalar> coeffs)
      : coeffs_(Eigen::Map<const VectorX<Scalar>>(coeffs.begin(),
                                                  static_cast<Index>(coeffs.size()))) {
    canonicalize();
  }

  static Polynomial zero() { return Polynomial(); }

  static Polynomial constant(Scalar c) {
    VectorX<Scalar> v(1);
    v(0) = c;
    return Polynomial(std::move(v));
  }

  /// c * x^k
  static Polynomial monomial(Index k, Scalar c = Scalar(1)) {
    VectorX<Scalar> v = VectorX<Scalar>::Zero(k + 1);
    v(k) = c;
    return Polynomial(std::move(v));
  }

  const VectorX<Scalar>& coeffs() const { return coeffs_; }

  bool isZero() const { return coeffs_.size() == 0; }

  Index degree() const { return isZero() ? kZeroPolynomialDegree : coeffs_.size() - 1; }

  Scalar leadingCoeff() const { return isZero() ? Scalar(0) : coeffs_(coeffs_.size() - 1); }

  /// Coefficient of x^k; zero beyond the stored range.
  Scalar coeff(Index k) const {
    return (k >= 0 && k < coeffs_.size()) ? coeffs_(k) : Scalar(0);
  }

  /// Horner evaluation. Works for real and complex arguments.
  template <typename T>
  T operator()(const T& x) const {
    T acc(0);
    for (Index j = coeffs_.size() - 1; j >= 0; --j) {
      acc = acc * x + T(coeffs_(j));
    }
    return acc;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    const Index n = std::max(a.coeffs_.size(), b.coeffs_.size());
    VectorX<Scalar> out = VectorX<Scalar>::Zero(n);
    out.head(a.coeffs_.size()) += a.coeffs_;
    out.head(b.coeffs_.size()) += b.coeffs_;
    return Polynomial(std::move(out));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    const Index n = std::max(a.coeffs_.size(), b.coeffs_.size());
    VectorX<Scalar> out = VectorX<Scalar>::Zero(n);
    out.head(a.coeffs_.size()) += a.coeffs_;
    out.head(b.coeffs_.size()) -= b.coeffs_;
    return Polynomial(std::move(out));
  }

  friend Polynomial operator-(const Polynomial& a) { return a * Scalar(-1); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.isZero() || b.isZero()) return Polynomial();
    VectorX<Scalar> out = VectorX<Scalar>::Zero(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (Index i = 0; i < a.coeffs_.size(); ++i) {
      for (Index j = 0; j < b.coeffs_.size(); ++j) {
        out(i + j) += a.coeffs_(i) * b.coeffs_(j);
      }
    }
    return Polynomial(std::move(out));
  }

  friend Polynomial operator*(const Polynomial& a, Scalar lambda) {
    return Polynomial(VectorX<Scalar>(a.coeffs_ * lambda));
  }

  friend Polynomial operator*(Scalar lambda, const Polynomial& a) { return a * lambda; }

  /// Exact comparison of canonical coefficient vectors.
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.coeffs_.size() == b.coeffs_.size() && a.coeffs_ == b.coeffs_;
  }

  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
    os << "poly[";
    for (Index j = 0; j < p.coeffs_.size(); ++j) {
      if (j) os << ", ";
      os << p.coeffs_(j);
    }
    return os << "]";
  }

 private:
  void canonicalize() {
    if (coeffs_.size() == 0) return;
    const Scalar max_abs = coeffs_.cwiseAbs().maxCoeff();
    if (!(max_abs > Scalar(0))) {
      coeffs_.resize(0);
      return;
    }
    Index last = coeffs_.size() - 1;
    const Scalar threshold = Scalar(kCoeffStripTol) * max_abs;
    while (last >= 0 && std::abs(coeffs_(last)) <= threshold) --last;
    if (last < 0) {
      coeffs_.resize(0);
    } else if (last + 1 < coeffs_.size()) {
      coeffs_.conservativeResize(last + 1);
    }
  }

  VectorX<Scalar> coeffs_;
};

/// Max-norm distance between coefficient vectors, relative to the larger of
/// 1 and the max-norm of `reference`.
template <typename Scalar>
Scalar relativeCoeffDistance(const Polynomial<Scalar>& p, const Polynomial<Scalar>& reference) {
  const Index n = std::max(p.coeffs().size(), reference.coeffs().size());
  Scalar dist(0);
  for (Index k = 0; k < n; ++k) {
    dist = std::max(dist, std::abs(p.coeff(k) - reference.coeff(k)));
  }
  const Scalar scale =
      reference.isZero() ? Scalar(1) : std::max(Scalar(1), reference.coeffs().cwiseAbs().maxCoeff());
  return dist / scale;
}

}  // namespace momentkit
