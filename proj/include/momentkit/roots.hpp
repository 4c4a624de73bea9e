#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "momentkit/errors.hpp"
#include "momentkit/polynomial.hpp"
#include "momentkit/types.hpp"

namespace momentkit {

/// Roots of a real polynomial. Real roots carry a zero imaginary part
/// exactly; strictly complex roots appear in conjugate pairs. Sorted by
/// real part, then imaginary part.
struct ComplexRootSet {
  std::vector<std::complex<double>> roots;
  double leading = 0.0;
  /// max |f(z)| over the returned roots (f as given, not monic).
  double residual = 0.0;
  Index iterations = 0;
};

struct RootOptions {
  Index max_iterations = 500;
  /// Backward-error acceptance threshold: each root must satisfy
  /// |f(z)| <= root_tol * max(||c||_inf, sum_k |c_k| |z|^k), i.e. z is an
  /// exact root of a polynomial whose coefficients differ relatively by at
  /// most root_tol. The second term is the evaluation scale at z; without it
  /// the test is unattainable for roots far from the unit circle.
  double root_tol = 1e-10;
  /// Roots with |Im z| <= snap_tol * (1 + |Re z|) are snapped to the axis.
  double snap_tol = 1e-7;
};

namespace detail {

inline bool dkConverged(const std::vector<std::complex<double>>& z,
                        const std::vector<std::complex<double>>& step) {
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (std::abs(step[k]) > 1e-13 * (1.0 + std::abs(z[k]))) return false;
  }
  return true;
}

}  // namespace detail

/// All d complex roots of f (counted with multiplicity) via Durand-Kerner
/// simultaneous iteration on the monic normalization. Throws ZeroPolynomial
/// for the zero polynomial and NonConvergence if the residual check fails
/// after max_iterations sweeps.
inline ComplexRootSet findRoots(const Polynomial<double>& f, const RootOptions& opts = {}) {
  using C = std::complex<double>;
  if (f.isZero()) throw ZeroPolynomial("findRoots: zero polynomial has no root set");
  const Index d = f.degree();
  ComplexRootSet out;
  out.leading = f.leadingCoeff();
  if (d == 0) return out;

  // Monic coefficients c[0..d-1]; c[d] = 1 implicit.
  const double lead = f.leadingCoeff();
  std::vector<C> c(static_cast<std::size_t>(d));
  double max_monic = 1.0;
  for (Index j = 0; j < d; ++j) {
    c[static_cast<std::size_t>(j)] = C(f.coeff(j) / lead, 0.0);
    max_monic = std::max(max_monic, std::abs(f.coeff(j) / lead));
  }

  auto eval_monic = [&](const C& z) {
    C acc(1.0, 0.0);
    for (Index j = d - 1; j >= 0; --j) acc = acc * z + c[static_cast<std::size_t>(j)];
    return acc;
  };

  // Cauchy-style enclosing circle, angles offset by the irrational 1/phi
  // so no starting point lands on a symmetry axis of the root set.
  const double radius = 1.0 + max_monic;
  const double offset = 2.0 / (1.0 + std::sqrt(5.0));
  const double pi = std::acos(-1.0);
  std::vector<C> z(static_cast<std::size_t>(d));
  for (Index k = 0; k < d; ++k) {
    const double theta = 2.0 * pi * (static_cast<double>(k) / static_cast<double>(d) + offset);
    z[static_cast<std::size_t>(k)] = radius * C(std::cos(theta), std::sin(theta));
  }

  std::vector<C> step(static_cast<std::size_t>(d));
  for (out.iterations = 0; out.iterations < opts.max_iterations; ++out.iterations) {
    for (std::size_t k = 0; k < z.size(); ++k) {
      C denom(1.0, 0.0);
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j != k) denom *= z[k] - z[j];
      }
      step[k] = (std::abs(denom) == 0.0) ? C(0.0, 0.0) : eval_monic(z[k]) / denom;
      z[k] -= step[k];
    }
    if (detail::dkConverged(z, step)) {
      ++out.iterations;
      break;
    }
  }

  // Snap near-real roots, then pair the rest into exact conjugates.
  std::vector<C> snapped;
  std::vector<C> complex_pool;
  for (const C& r : z) {
    if (std::abs(r.imag()) <= opts.snap_tol * (1.0 + std::abs(r.real()))) {
      snapped.emplace_back(r.real(), 0.0);
    } else {
      complex_pool.push_back(r);
    }
  }
  std::vector<bool> used(complex_pool.size(), false);
  for (std::size_t i = 0; i < complex_pool.size(); ++i) {
    if (used[i]) continue;
    if (complex_pool[i].imag() < 0.0) continue;  // pair from the upper half plane
    std::size_t best = complex_pool.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < complex_pool.size(); ++j) {
      if (used[j] || j == i || complex_pool[j].imag() >= 0.0) continue;
      const double dist = std::abs(complex_pool[j] - std::conj(complex_pool[i]));
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    if (best < complex_pool.size()) {
      used[i] = used[best] = true;
      const C avg = 0.5 * (complex_pool[i] + std::conj(complex_pool[best]));
      snapped.push_back(avg);
      snapped.push_back(std::conj(avg));
    }
  }
  for (std::size_t i = 0; i < complex_pool.size(); ++i) {
    if (!used[i]) snapped.emplace_back(complex_pool[i].real(), 0.0);  // unpaired stragglers
  }

  std::sort(snapped.begin(), snapped.end(), [](const C& a, const C& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });

  double residual = 0.0;
  double worst_backward = 0.0;
  const double coeff_scale = f.coeffs().cwiseAbs().maxCoeff();
  for (const C& r : snapped) {
    const double value = std::abs(f(r));
    residual = std::max(residual, value);
    double eval_scale = 0.0;  // sum_k |c_k| |r|^k by absolute-value Horner
    const double az = std::abs(r);
    for (Index j = f.degree(); j >= 0; --j) eval_scale = eval_scale * az + std::abs(f.coeff(j));
    worst_backward = std::max(worst_backward, value / std::max(coeff_scale, eval_scale));
  }
  if (worst_backward > opts.root_tol) {
    throw NonConvergence("findRoots: backward error " + std::to_string(worst_backward) +
                         " above tolerance after " + std::to_string(out.iterations) +
                         " iterations");
  }

  out.roots = std::move(snapped);
  out.residual = residual;
  return out;
}

/// Monic polynomial with the given roots, expanded over the complex numbers
/// and projected back to real coefficients. Imaginary residue of the
/// coefficients is reported so callers can assert the roots were
/// conjugate-closed.
inline Polynomial<double> polynomialFromRoots(const std::vector<std::complex<double>>& roots,
                                              double* max_imag_residue = nullptr) {
  std::vector<std::complex<double>> c{{1.0, 0.0}};
  for (const auto& r : roots) {
    std::vector<std::complex<double>> next(c.size() + 1, {0.0, 0.0});
    for (std::size_t j = 0; j < c.size(); ++j) {
      next[j + 1] += c[j];
      next[j] -= r * c[j];
    }
    c = std::move(next);
  }
  VectorX<double> real_coeffs(static_cast<Index>(c.size()));
  double imag_residue = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    real_coeffs(static_cast<Index>(j)) = c[j].real();
    imag_residue = std::max(imag_residue, std::abs(c[j].imag()));
  }
  if (max_imag_residue) *max_imag_residue = imag_residue;
  return Polynomial<double>(std::move(real_coeffs));
}

}  // namespace momentkit
