#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <variant>
#include <vector>

#include "momentkit/errors.hpp"
#include "momentkit/polynomial.hpp"
#include "momentkit/roots.hpp"
#include "momentkit/types.hpp"

namespace momentkit {

/// Writes a nonnegative polynomial as p^2 + q^2. residual is the relative
/// max-norm coefficient error of p^2 + q^2 against the input.
struct SosCertificate {
  Polynomial<double> p;
  Polynomial<double> q;
  double residual = 0.0;
};

/// A real point where the tested polynomial is strictly negative.
struct NegativityWitness {
  double x0 = 0.0;
  double value = 0.0;
};

using SosResult = std::variant<SosCertificate, NegativityWitness>;

inline constexpr double kSosTol = 1e-7;

/// Real roots closer than this (relative) are one algebraic root: double
/// roots computed in floating point split symmetrically, clustering
/// restores the multiplicity.
inline constexpr double kRootClusterGap = 1e-6;

namespace detail {

/// Probe f near x0 at x0 +/- eps for geometrically growing eps until a
/// strictly negative value appears.
inline NegativityWitness probeNegativeNear(const Polynomial<double>& f, double x0) {
  double eps = 1e-9 * (1.0 + std::abs(x0));
  for (int step = 0; step < 200; ++step) {
    for (const double x : {x0 - eps, x0 + eps}) {
      const double v = f(x);
      if (v < 0.0) return {x, v};
    }
    eps *= 4.0;
  }
  throw NonConvergence("sosDecompose: expected a sign change near " + std::to_string(x0) +
                       " but probing found none");
}

/// Probe geometrically growing |x| in the given directions (+1, -1, or
/// both) until f goes negative.
inline NegativityWitness probeNegativeFar(const Polynomial<double>& f, bool plus, bool minus) {
  for (int k = 0; k <= 160; ++k) {
    const double mag = std::pow(10.0, 0.125 * k);
    if (plus) {
      const double v = f(mag);
      if (v < 0.0) return {mag, v};
    }
    if (minus) {
      const double v = f(-mag);
      if (v < 0.0) return {-mag, v};
    }
  }
  throw NonConvergence("sosDecompose: polynomial should be negative for large |x| but none found");
}

}  // namespace detail

/// Constructive sum-of-two-squares decomposition for polynomials
/// nonnegative on the real line, or a point of negativity otherwise.
///
/// A nonnegative f has even degree, positive leading coefficient, and even
/// multiplicity at every real root, so its complex roots split into
/// conjugate pairs and halved real bundles. Collecting one member of each
/// pair into w gives w * conj(w) = f / leading, and
/// f = (sqrt(leading) Re w)^2 + (sqrt(leading) Im w)^2.
inline SosResult sosDecompose(const Polynomial<double>& f, double sos_tol = kSosTol) {
  using C = std::complex<double>;
  if (f.isZero()) throw ZeroPolynomial("sosDecompose: zero polynomial");

  const Index d = f.degree();
  const double lead = f.leadingCoeff();
  if (d == 0) {
    if (lead < 0.0) return NegativityWitness{0.0, lead};
    return SosCertificate{Polynomial<double>::constant(std::sqrt(lead)), Polynomial<double>::zero(),
                          0.0};
  }
  if (d % 2 == 1) {
    // Odd degree: f escapes to -inf on the side opposite the leading sign.
    return detail::probeNegativeFar(f, lead < 0.0, lead > 0.0);
  }
  if (lead < 0.0) {
    const double at_zero = f(0.0);
    if (at_zero < 0.0) return NegativityWitness{0.0, at_zero};
    return detail::probeNegativeFar(f, true, true);
  }

  const ComplexRootSet root_set = findRoots(f);

  // Cluster real roots to recover algebraic multiplicities.
  std::vector<double> reals;
  std::vector<C> upper_half;
  for (const C& r : root_set.roots) {
    if (r.imag() == 0.0) {
      reals.push_back(r.real());
    } else if (r.imag() > 0.0) {
      upper_half.push_back(r);
    }
  }
  std::sort(reals.begin(), reals.end());

  std::vector<C> w_roots = upper_half;  // one member of each conjugate pair
  std::size_t i = 0;
  while (i < reals.size()) {
    std::size_t j = i + 1;
    while (j < reals.size() &&
           reals[j] - reals[j - 1] <= kRootClusterGap * (1.0 + std::abs(reals[j]))) {
      ++j;
    }
    const std::size_t multiplicity = j - i;
    double center = 0.0;
    for (std::size_t k = i; k < j; ++k) center += reals[k];
    center /= static_cast<double>(multiplicity);
    if (multiplicity % 2 == 1) return detail::probeNegativeNear(f, center);
    for (std::size_t k = 0; k < multiplicity / 2; ++k) w_roots.emplace_back(center, 0.0);
    i = j;
  }

  // Expand w over the complexes; its real and imaginary coefficient parts
  // are the certificate, scaled by sqrt(leading).
  std::vector<C> wc{{1.0, 0.0}};
  for (const C& r : w_roots) {
    std::vector<C> next(wc.size() + 1, {0.0, 0.0});
    for (std::size_t k = 0; k < wc.size(); ++k) {
      next[k + 1] += wc[k];
      next[k] -= r * wc[k];
    }
    wc = std::move(next);
  }
  const double scale = std::sqrt(lead);
  VectorX<double> pc(static_cast<Index>(wc.size()));
  VectorX<double> qc(static_cast<Index>(wc.size()));
  for (std::size_t k = 0; k < wc.size(); ++k) {
    pc(static_cast<Index>(k)) = scale * wc[k].real();
    qc(static_cast<Index>(k)) = scale * wc[k].imag();
  }

  SosCertificate cert;
  cert.p = Polynomial<double>(std::move(pc));
  cert.q = Polynomial<double>(std::move(qc));
  cert.residual = relativeCoeffDistance(cert.p * cert.p + cert.q * cert.q, f);
  if (cert.residual > sos_tol) {
    throw NonConvergence("sosDecompose: reconstruction residual " +
                         std::to_string(cert.residual) + " exceeds tolerance");
  }
  return cert;
}

/// True iff p^2 + q^2 matches f to relative max-norm tolerance; independent
/// of how the certificate was produced.
inline bool verifyCertificate(const Polynomial<double>& f, const SosCertificate& cert,
                              double tol = kSosTol) {
  return relativeCoeffDistance(cert.p * cert.p + cert.q * cert.q, f) <= tol;
}

}  // namespace momentkit
