#pragma once

// Test-side oracles. Every expected value produced here is computed by a
// route independent of the library internals (direct summation, composite
// Simpson integration, exhaustive vertex enumeration), so assertions do not
// inherit the arithmetic they are checking.

#include <Eigen/LU>
#include <cmath>
#include <random>
#include <vector>

#include <momentkit/linear_program.hpp>
#include <momentkit/quadrature.hpp>
#include <momentkit/types.hpp>

namespace oracles {

using momentkit::Index;
using momentkit::LinearProgram;
using momentkit::LpRelation;
using momentkit::LpRow;
using momentkit::LpSense;
using momentkit::LpStatus;
using momentkit::MatrixX;
using momentkit::VectorX;

using Rng = std::mt19937_64;

// ---------------------------------------------------------------------------
// Numeric integration.

/// Composite Simpson rule with n (even) subintervals.
template <typename F>
double simpson(F f, double a, double b, Index n) {
  const double h = (b - a) / static_cast<double>(n);
  double acc = f(a) + f(b);
  for (Index i = 1; i < n; ++i) {
    acc += f(a + h * static_cast<double>(i)) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return acc * h / 3.0;
}

/// k-th moment of the standard normal by quadrature over [-12, 12]; the
/// discarded tail is below 1e-20 for k <= 12.
inline double gaussianMoment(Index k) {
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::acos(-1.0));
  return simpson(
      [&](double x) { return std::pow(x, static_cast<double>(k)) * std::exp(-0.5 * x * x) *
                             inv_sqrt_2pi; },
      -12.0, 12.0, 24000);
}

// ---------------------------------------------------------------------------
// Polynomial evaluation by plain power sums (vs. the library's Horner form).

inline double naiveEval(const VectorX<double>& coeffs, double x) {
  double acc = 0.0;
  for (Index k = 0; k < coeffs.size(); ++k) acc += coeffs(k) * std::pow(x, static_cast<double>(k));
  return acc;
}

// ---------------------------------------------------------------------------
// Random atomic measures and their moments by direct summation.

inline momentkit::AtomicMeasure<double> randomMeasure(Rng& rng, Index max_atoms,
                                                      double min_gap = 0.5) {
  std::uniform_int_distribution<Index> count_dist(1, max_atoms);
  std::uniform_real_distribution<double> node_dist(-5.0, 5.0);
  std::uniform_real_distribution<double> weight_dist(0.1, 2.0);
  const Index count = count_dist(rng);
  std::vector<double> nodes;
  while (static_cast<Index>(nodes.size()) < count) {
    const double x = node_dist(rng);
    bool clear = true;
    for (double y : nodes) {
      if (std::abs(x - y) < min_gap) clear = false;
    }
    if (clear) nodes.push_back(x);
  }
  std::sort(nodes.begin(), nodes.end());
  momentkit::AtomicMeasure<double> mu;
  for (double x : nodes) mu.atoms.push_back({x, weight_dist(rng)});
  return mu;
}

inline VectorX<double> rawMoments(const momentkit::AtomicMeasure<double>& mu, Index order) {
  VectorX<double> s = VectorX<double>::Zero(order + 1);
  for (const auto& atom : mu.atoms) {
    double power = atom.weight;
    for (Index k = 0; k <= order; ++k) {
      s(k) += power;
      power *= atom.node;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Brute-force LP oracle: enumerate every vertex of the constraint polytope
// (intersected with a huge outer box), pick the best feasible one, and test
// the recession cone for unboundedness. Usable for up to 3 variables.

struct LpOracleVerdict {
  LpStatus status = LpStatus::Optimal;
  double optimum = 0.0;
};

namespace detail {

/// Vertices of {rows . x <= rhs} within [-box, box]^n via all n-subsets of
/// tight constraints (fixed-depth loops, n <= 3).
inline std::vector<VectorX<double>> enumerateVertices(const std::vector<VectorX<double>>& a,
                                                      const std::vector<double>& b, Index n,
                                                      double box) {
  std::vector<VectorX<double>> rows = a;
  std::vector<double> rhs = b;
  for (Index j = 0; j < n; ++j) {
    VectorX<double> e = VectorX<double>::Zero(n);
    e(j) = 1.0;
    rows.push_back(e);
    rhs.push_back(box);
    rows.push_back(-e);
    rhs.push_back(box);
  }
  const Index m = static_cast<Index>(rows.size());
  std::vector<VectorX<double>> vertices;
  std::vector<Index> pick(static_cast<std::size_t>(n));
  const auto try_subset = [&]() {
    MatrixX<double> mat(n, n);
    VectorX<double> vec(n);
    for (Index i = 0; i < n; ++i) {
      mat.row(i) = rows[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])].transpose();
      vec(i) = rhs[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
    }
    Eigen::FullPivLU<MatrixX<double>> lu(mat);
    if (!lu.isInvertible()) return;
    const VectorX<double> x = lu.solve(vec);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].dot(x) > rhs[r] + 1e-7 * (1.0 + std::abs(rhs[r]))) return;
    }
    vertices.push_back(x);
  };
  for (Index i = 0; i < m; ++i) {
    pick[0] = i;
    if (n == 1) {
      try_subset();
      continue;
    }
    for (Index j = i + 1; j < m; ++j) {
      pick[1] = j;
      if (n == 2) {
        try_subset();
        continue;
      }
      for (Index k = j + 1; k < m; ++k) {
        pick[2] = k;
        try_subset();
      }
    }
  }
  return vertices;
}

/// The LP's constraints flattened to <=-rows, box bounds included.
inline void lessEqualRows(const LinearProgram& lp, std::vector<VectorX<double>>& rows,
                          std::vector<double>& rhs) {
  const Index n = lp.objective.size();
  for (const LpRow& row : lp.rows) {
    if (row.relation == LpRelation::LessEqual) {
      rows.push_back(row.coeffs);
      rhs.push_back(row.rhs);
    } else {
      rows.push_back(-row.coeffs);
      rhs.push_back(-row.rhs);
    }
  }
  for (Index j = 0; j < n; ++j) {
    VectorX<double> e = VectorX<double>::Zero(n);
    e(j) = 1.0;
    if (lp.upper_bounds.size() == n && std::isfinite(lp.upper_bounds(j))) {
      rows.push_back(e);
      rhs.push_back(lp.upper_bounds(j));
    }
    if (lp.lower_bounds.size() == n && std::isfinite(lp.lower_bounds(j))) {
      rows.push_back(-e);
      rhs.push_back(-lp.lower_bounds(j));
    }
  }
}

}  // namespace detail

inline LpOracleVerdict lpOracle(const LinearProgram& lp) {
  const Index n = lp.objective.size();
  const double sign = lp.sense == LpSense::Maximize ? 1.0 : -1.0;
  std::vector<VectorX<double>> rows;
  std::vector<double> rhs;
  detail::lessEqualRows(lp, rows, rhs);

  const double big = 1e7;
  const std::vector<VectorX<double>> vertices = detail::enumerateVertices(rows, rhs, n, big);
  if (vertices.empty()) return {LpStatus::Infeasible, 0.0};

  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices) best = std::max(best, sign * lp.objective.dot(v));

  // Recession directions: A d <= 0 within the unit box; any with positive
  // payoff certifies an unbounded objective.
  std::vector<double> zero_rhs(rhs.size(), 0.0);
  for (const auto& d : detail::enumerateVertices(rows, zero_rhs, n, 1.0)) {
    if (sign * lp.objective.dot(d) > 1e-7) return {LpStatus::Unbounded, 0.0};
  }
  return {LpStatus::Optimal, sign * best};
}

/// Random small LP with integer data: 1-3 variables, 1-8 rows, mixed
/// relations and sense, box bounds half the time. Integer coefficients keep
/// every vertex well conditioned for the enumeration oracle.
inline LinearProgram randomLp(Rng& rng) {
  std::uniform_int_distribution<Index> n_dist(1, 3);
  std::uniform_int_distribution<Index> m_dist(1, 8);
  std::uniform_int_distribution<int> coeff_dist(-5, 5);
  std::uniform_int_distribution<int> flag(0, 1);
  std::uniform_int_distribution<int> lo_dist(-3, 0);
  std::uniform_int_distribution<int> hi_dist(0, 3);

  LinearProgram lp;
  const Index n = n_dist(rng);
  const Index m = m_dist(rng);
  lp.sense = flag(rng) == 0 ? LpSense::Maximize : LpSense::Minimize;
  lp.objective.resize(n);
  for (Index j = 0; j < n; ++j) lp.objective(j) = coeff_dist(rng);
  for (Index i = 0; i < m; ++i) {
    LpRow row;
    row.coeffs.resize(n);
    for (Index j = 0; j < n; ++j) row.coeffs(j) = coeff_dist(rng);
    row.relation = flag(rng) == 0 ? LpRelation::LessEqual : LpRelation::GreaterEqual;
    row.rhs = coeff_dist(rng);
    lp.rows.push_back(std::move(row));
  }
  if (flag(rng) == 0) {
    lp.lower_bounds.resize(n);
    lp.upper_bounds.resize(n);
    for (Index j = 0; j < n; ++j) {
      lp.lower_bounds(j) = lo_dist(rng);
      lp.upper_bounds(j) = hi_dist(rng);
    }
  }
  return lp;
}

}  // namespace oracles
