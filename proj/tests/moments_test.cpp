#include <doctest.h>

#include <momentkit/moments.hpp>

#include <cmath>
#include <random>

#include "oracles.hpp"

using momentkit::applyFunctional;
using momentkit::buildHankel;
using momentkit::checkPsd;
using momentkit::hamburgerCheck;
using momentkit::HankelMatrix;
using momentkit::Index;
using momentkit::MomentSequence;
using momentkit::Polynomial;
using momentkit::PsdVerdict;
using momentkit::VectorX;

namespace {

Polynomial<double> poly(std::initializer_list<double> coeffs) {
  VectorX<double> c(static_cast<Index>(coeffs.size()));
  Index i = 0;
  for (double v : coeffs) c(i++) = v;
  return Polynomial<double>(std::move(c));
}

}  // namespace

TEST_CASE("moment sequences require positive mass") {
  CHECK_THROWS_AS(MomentSequence<double>(VectorX<double>()), momentkit::InvalidArgument);
  CHECK_THROWS_AS(MomentSequence<double>({0.0, 1.0}), momentkit::InvalidArgument);
  CHECK_THROWS_AS(MomentSequence<double>({-1.0}), momentkit::InvalidArgument);
  const MomentSequence<double> s{1.0, 2.0, 5.0};
  CHECK(s.maxOrder() == 2);
  CHECK(s[0] == 1.0);
  CHECK(s[2] == 5.0);
}

TEST_CASE("hankel assembly walks the antidiagonals") {
  const HankelMatrix<double> delta = buildHankel(MomentSequence<double>{1, 0, 0, 0, 0}, 2);
  CHECK(delta.order() == 3);
  const Eigen::Matrix3d delta_expected =
      (Eigen::Matrix3d() << 1, 0, 0, 0, 0, 0, 0, 0, 0).finished();
  CHECK((delta.entries - delta_expected).cwiseAbs().maxCoeff() == 0.0);

  const HankelMatrix<double> h = buildHankel(MomentSequence<double>{1, 2, 1}, 1);
  const Eigen::Matrix2d h_expected = (Eigen::Matrix2d() << 1, 2, 2, 1).finished();
  CHECK((h.entries - h_expected).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(buildHankel(MomentSequence<double>{1, 2, 1}, 2),
                  momentkit::InsufficientMoments);
}

TEST_CASE("gaussian truncation produces the classic hankel block") {
  // The literal values (1,0,1,0,3) are the standard normal moments; the
  // quadrature oracle recomputes them from the density.
  for (Index k = 0; k <= 4; ++k) {
    const double expected[] = {1.0, 0.0, 1.0, 0.0, 3.0};
    CHECK(std::abs(oracles::gaussianMoment(k) - expected[k]) <= 1e-9);
  }
  const HankelMatrix<double> h = buildHankel(MomentSequence<double>{1, 0, 1, 0, 3}, 2);
  const Eigen::Matrix3d expected = (Eigen::Matrix3d() << 1, 0, 1, 0, 1, 0, 1, 0, 3).finished();
  CHECK((h.entries - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("psd check flags the indefinite 2x2 and certifies it") {
  const PsdVerdict<double> v = checkPsd(buildHankel(MomentSequence<double>{1, 2, 1}, 1));
  CHECK_FALSE(v.is_psd);
  CHECK(v.min_eigenvalue == doctest::Approx(-1.0).epsilon(1e-12));
  REQUIRE(v.witness.has_value());
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK((*v.witness)(0) == doctest::Approx(inv_sqrt2).epsilon(1e-10));
  CHECK((*v.witness)(1) == doctest::Approx(-inv_sqrt2).epsilon(1e-10));
}

TEST_CASE("psd check accepts a singular but nonnegative matrix") {
  const PsdVerdict<double> v = checkPsd(buildHankel(MomentSequence<double>{1, 0, 0}, 1));
  CHECK(v.is_psd);
  CHECK(v.min_eigenvalue == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_FALSE(v.witness.has_value());
}

TEST_CASE("psd check matches the characteristic polynomial oracle") {
  // det(H - t I) for H = [[1,0,1],[0,1,0],[1,0,3]] factors as
  // (1 - t)(t^2 - 4t + 2); the smallest eigenvalue is 2 - sqrt(2).
  const PsdVerdict<double> v = checkPsd(buildHankel(MomentSequence<double>{1, 0, 1, 0, 3}, 2));
  CHECK(v.is_psd);
  CHECK(v.min_eigenvalue == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("hamburger check covers the full moment span") {
  CHECK(hamburgerCheck(MomentSequence<double>{1, 0, 1, 0, 3, 0, 15}).is_psd);
  CHECK(hamburgerCheck(MomentSequence<double>{1}).is_psd);

  const PsdVerdict<double> bad = hamburgerCheck(MomentSequence<double>{1, 0, -1});
  CHECK_FALSE(bad.is_psd);
  CHECK(bad.min_eigenvalue == doctest::Approx(-1.0).epsilon(1e-12));
  REQUIRE(bad.witness.has_value());
  // A negative second moment is refuted along the pure-x direction.
  CHECK(std::abs((*bad.witness)(0)) <= 1e-12);
  CHECK((*bad.witness)(1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("the functional is linear in the moments") {
  CHECK(applyFunctional(MomentSequence<double>{1, 0, 1}, poly({1, 0, 1})) == 2.0);
  CHECK(applyFunctional(MomentSequence<double>{1, 0, 1, 0, 3}, poly({0, 0, 0, 0, 1})) == 3.0);
  CHECK(applyFunctional(MomentSequence<double>{1, 2, 5}, poly({1, -4, 4})) == 13.0);
  CHECK(applyFunctional(MomentSequence<double>{1, 2, 5}, Polynomial<double>::zero()) == 0.0);
  CHECK_THROWS_AS(applyFunctional(MomentSequence<double>{1, 0, 1}, poly({0, 0, 0, 1})),
                  momentkit::DegreeTooHigh);
}

TEST_CASE("accepted sequences keep every quadratic form nonnegative") {
  oracles::Rng rng(555);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double tol = 1e-9;
  for (int trial = 0; trial < 5; ++trial) {
    const auto mu = oracles::randomMeasure(rng, 5);
    const MomentSequence<double> s{oracles::rawMoments(mu, 10)};
    const PsdVerdict<double> v = hamburgerCheck(s, tol);
    REQUIRE(v.is_psd);

    const HankelMatrix<double> h = buildHankel(s, 5);
    const double bound = 10.0 * tol * h.entries.norm();
    for (int probe = 0; probe < 1000; ++probe) {
      VectorX<double> c(6);
      for (Index j = 0; j < 6; ++j) c(j) = gauss(rng);
      c.normalize();
      CHECK(c.dot(h.entries * c) >= -bound);
    }
  }
}

TEST_CASE("rejection witnesses certify their own verdict") {
  oracles::Rng rng(556);
  std::uniform_real_distribution<double> bump(0.5, 2.0);
  std::uniform_int_distribution<Index> pick(1, 2);
  for (int trial = 0; trial < 40; ++trial) {
    const auto mu = oracles::randomMeasure(rng, 4);
    VectorX<double> s = oracles::rawMoments(mu, 6);
    const Index i = pick(rng);
    const double spread = buildHankel(MomentSequence<double>{VectorX<double>(s)}, 3)
                              .entries.cwiseAbs()
                              .maxCoeff();
    s(2 * i) -= s(2 * i) + bump(rng) * std::max(1.0, spread) + 1.0;

    const MomentSequence<double> broken{std::move(s)};
    const PsdVerdict<double> v = hamburgerCheck(broken);
    REQUIRE_FALSE(v.is_psd);
    REQUIRE(v.witness.has_value());
    const HankelMatrix<double> h = buildHankel(broken, 3);
    CHECK(v.witness->dot(h.entries * *v.witness) < 0.0);
    CHECK(std::abs(v.witness->norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("a failing block keeps failing under any extension") {
  oracles::Rng rng(557);
  std::uniform_real_distribution<double> tail(-4.0, 4.0);
  const MomentSequence<double> broken{1, 2, 1};  // indefinite at order 1
  REQUIRE_FALSE(hamburgerCheck(broken).is_psd);
  for (int trial = 0; trial < 25; ++trial) {
    VectorX<double> extended(5);
    extended << 1.0, 2.0, 1.0, tail(rng), tail(rng);
    // The order-1 block sits top-left in the order-2 matrix, so its negative
    // direction (padded with zero) transfers verbatim.
    const PsdVerdict<double> v = hamburgerCheck(MomentSequence<double>{std::move(extended)});
    CHECK_FALSE(v.is_psd);
  }
}
