#include <doctest.h>

#include <momentkit/roots.hpp>

#include <algorithm>
#include <complex>
#include <random>

#include "oracles.hpp"

using momentkit::ComplexRootSet;
using momentkit::findRoots;
using momentkit::Index;
using momentkit::Polynomial;
using momentkit::polynomialFromRoots;
using momentkit::VectorX;

namespace {

Polynomial<double> poly(std::initializer_list<double> coeffs) {
  VectorX<double> c(static_cast<Index>(coeffs.size()));
  Index i = 0;
  for (double v : coeffs) c(i++) = v;
  return Polynomial<double>(std::move(c));
}

}  // namespace

TEST_CASE("x^2 + 1 has roots +-i") {
  const ComplexRootSet set = findRoots(poly({1, 0, 1}));
  REQUIRE(set.roots.size() == 2);
  CHECK(set.leading == 1.0);
  CHECK(set.roots[0].real() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(set.roots[0].imag() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(set.roots[1] == std::conj(set.roots[0]));  // exact after symmetrization
}

TEST_CASE("x^2 has a double root at the origin") {
  const ComplexRootSet set = findRoots(poly({0, 0, 1}));
  REQUIRE(set.roots.size() == 2);
  for (const auto& r : set.roots) {
    CHECK(r.imag() == 0.0);
    CHECK(std::abs(r.real()) <= 1e-7);
  }
}

TEST_CASE("x^4 + 1 yields the four eighth roots of unity rotations") {
  const ComplexRootSet set = findRoots(poly({1, 0, 0, 0, 1}));
  REQUIRE(set.roots.size() == 4);
  for (const auto& z : set.roots) {
    CHECK(std::abs(z * z * z * z + 1.0) <= 1e-10);  // z^4 = -1
    CHECK(std::abs(std::abs(z) - 1.0) <= 1e-10);
  }
}

TEST_CASE("degenerate inputs are rejected or trivial") {
  CHECK_THROWS_AS(findRoots(Polynomial<double>::zero()), momentkit::ZeroPolynomial);
  const ComplexRootSet constant = findRoots(Polynomial<double>::constant(3.0));
  CHECK(constant.roots.empty());
  CHECK(constant.leading == 3.0);
}

TEST_CASE("linear and scaled polynomials resolve exactly") {
  const ComplexRootSet set = findRoots(poly({-6, 2}));  // 2x - 6
  REQUIRE(set.roots.size() == 1);
  CHECK(set.roots[0].real() == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(set.roots[0].imag() == 0.0);
  CHECK(set.leading == 2.0);
}

TEST_CASE("non-real roots come in exact conjugate pairs") {
  oracles::Rng rng(4242);
  std::uniform_real_distribution<double> coeff_dist(-3.0, 3.0);
  std::uniform_int_distribution<Index> deg_dist(2, 9);
  for (int trial = 0; trial < 60; ++trial) {
    const Index d = deg_dist(rng);
    VectorX<double> c(d + 1);
    for (Index j = 0; j <= d; ++j) c(j) = coeff_dist(rng);
    if (c(d) == 0.0) c(d) = 1.0;
    const ComplexRootSet set = findRoots(Polynomial<double>(std::move(c)));
    REQUIRE(static_cast<Index>(set.roots.size()) == d);
    for (const auto& z : set.roots) {
      if (z.imag() == 0.0) continue;
      const bool paired = std::any_of(set.roots.begin(), set.roots.end(),
                                      [&](const std::complex<double>& w) {
                                        return w == std::conj(z);
                                      });
      CHECK(paired);
    }
  }
}

TEST_CASE("well separated roots reconstruct the input coefficients") {
  oracles::Rng rng(90210);
  std::uniform_int_distribution<Index> pair_dist(0, 3);
  std::uniform_real_distribution<double> real_dist(-4.0, 4.0);
  std::uniform_real_distribution<double> imag_dist(0.4, 3.0);
  std::uniform_real_distribution<double> lead_dist(0.5, 2.0);

  for (int trial = 0; trial < 80; ++trial) {
    // Draw separated real roots and conjugate pairs, total degree <= 12.
    std::vector<std::complex<double>> roots;
    const Index pairs = pair_dist(rng);
    const Index reals = std::min<Index>(12 - 2 * pairs, 4);
    for (Index i = 0; i < pairs; ++i) {
      const std::complex<double> z(real_dist(rng), imag_dist(rng));
      roots.push_back(z);
      roots.push_back(std::conj(z));
    }
    std::vector<double> placed;
    while (static_cast<Index>(placed.size()) < reals) {
      const double x = real_dist(rng);
      bool clear = true;
      for (double y : placed) {
        if (std::abs(x - y) < 0.3) clear = false;
      }
      if (clear) placed.push_back(x);
    }
    for (double x : placed) roots.emplace_back(x, 0.0);
    if (roots.empty()) continue;

    const double lead = lead_dist(rng);
    const Polynomial<double> f = polynomialFromRoots(roots) * lead;
    const ComplexRootSet found = findRoots(f);
    REQUIRE(found.roots.size() == roots.size());

    const Polynomial<double> rebuilt = polynomialFromRoots(found.roots) * found.leading;
    CHECK(momentkit::relativeCoeffDistance(rebuilt, f) <= 1e-8);
  }
}

TEST_CASE("roots far from the unit circle still converge") {
  // A tiny leading coefficient pushes two roots out near |x| ~ 55; the
  // backward-error acceptance must not reject the converged configuration.
  const Polynomial<double> q = poly({-1.14, 2.02, -2.85, 1.84, -0.037});
  const Polynomial<double> f = q * q + Polynomial<double>::constant(3.96);
  const ComplexRootSet set = findRoots(f);
  CHECK(set.roots.size() == 8);
  // Every reported root is genuinely a root: backward error at machine scale.
  for (const auto& z : set.roots) {
    double scale = 0.0;
    for (Index j = f.degree(); j >= 0; --j) scale = scale * std::abs(z) + std::abs(f.coeff(j));
    CHECK(std::abs(f(z)) <= 1e-10 * scale);
  }
}

TEST_CASE("reported residual and iteration count are populated") {
  const ComplexRootSet set = findRoots(poly({-2, 0, 1}));  // x^2 - 2
  CHECK(set.iterations > 0);
  CHECK(set.residual >= 0.0);
  CHECK(set.residual <= 1e-10 * 2.0 * 10.0);  // comfortably converged
  REQUIRE(set.roots.size() == 2);
  CHECK(set.roots[0].real() == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
  CHECK(set.roots[1].real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("polynomialFromRoots reports the imaginary residue") {
  double residue = 1.0;
  const std::vector<std::complex<double>> conj_pair{{1.0, 2.0}, {1.0, -2.0}};
  const Polynomial<double> f = polynomialFromRoots(conj_pair, &residue);
  CHECK(residue <= 1e-15);
  CHECK(f.coeff(0) == doctest::Approx(5.0));   // |1+2i|^2
  CHECK(f.coeff(1) == doctest::Approx(-2.0));  // -2 Re
  CHECK(f.coeff(2) == doctest::Approx(1.0));
}
