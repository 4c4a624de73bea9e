#pragma once

#include <algorithm>
#include <cmath>
#include <future>
#include <string>
#include <vector>

#include "momentkit/errors.hpp"
#include "momentkit/function_spec.hpp"
#include "momentkit/linear_program.hpp"
#include "momentkit/moments.hpp"
#include "momentkit/polynomial.hpp"
#include "momentkit/quadrature.hpp"
#include "momentkit/types.hpp"

namespace momentkit {

enum class SandwichSide { Minorant, Majorant };
enum class PickPolicy { Midpoint, Lower, Upper };

inline constexpr double kLpTol = 1e-8;

/// Extension of the moment functional to span(polynomials of the given
/// degree, g): minorant/majorant LP bounds, the chosen value e = L(g), and
/// the optimal sandwich polynomials.
struct SandwichResult {
  double lower = 0.0;
  double upper = 0.0;
  double e = 0.0;
  Polynomial<double> minorant;
  Polynomial<double> majorant;
  Index degree = 0;
  Index grid_size = 0;
};

/// True iff |g| <= (a^2 + 1)/2 at probe_count uniformly spaced points of
/// g's domain (endpoints included). Certifies the envelope hypothesis up to
/// grid resolution; the slack absorbs roundoff at exact tangency.
inline bool envelopeCheck(const FunctionSpec& g, const Polynomial<double>& a, Index probe_count) {
  if (probe_count < 2) throw InvalidArgument("envelopeCheck: need at least two probe points");
  const double lo = g.domain().lo, hi = g.domain().hi;
  for (Index i = 0; i < probe_count; ++i) {
    const double x =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(probe_count - 1);
    const double gx = std::abs(g(x));
    const double ax = a(x);
    const double bound = 0.5 * (ax * ax + 1.0);
    const double slack = 64.0 * std::numeric_limits<double>::epsilon() * std::max({1.0, gx, bound});
    if (gx > bound + slack) return false;
  }
  return true;
}

/// Uniform grid over the domain merged with the given extra points (the
/// recovered measure's nodes), sorted with near-duplicates removed.
inline std::vector<double> sandwichGrid(const Interval<double>& domain, Index grid_size,
                                        const std::vector<double>& extra_points = {}) {
  if (grid_size < 2) throw InvalidArgument("sandwichGrid: need at least two grid points");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(grid_size) + extra_points.size());
  for (Index i = 0; i < grid_size; ++i) {
    grid.push_back(domain.lo + (domain.hi - domain.lo) * static_cast<double>(i) /
                                   static_cast<double>(grid_size - 1));
  }
  for (double x : extra_points) {
    if (x < domain.lo || x > domain.hi) {
      throw EvaluationOutsideDomain("sandwichGrid: point " + std::to_string(x) +
                                    " outside the function domain");
    }
    grid.push_back(x);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) { return b - a <= 1e-12 * (1.0 + std::abs(a)); }),
             grid.end());
  return grid;
}

/// LP for one side of the sandwich: variables are the coefficients of a
/// degree-bounded polynomial f, objective L(f) = sum c_j s_j (maximized for
/// the minorant below g, minimized for the majorant above), one pointwise
/// constraint per grid point, coefficients boxed at 10^3 * (1 + max|g|).
inline LinearProgram buildSandwichLp(const MomentSequence<double>& s, const FunctionSpec& g,
                                     Index degree, const std::vector<double>& grid,
                                     SandwichSide side) {
  if (degree < 0) throw InvalidArgument("buildSandwichLp: degree must be nonnegative");
  if (degree > s.maxOrder()) {
    throw DegreeTooHigh("buildSandwichLp: degree " + std::to_string(degree) +
                        " exceeds available moment order " + std::to_string(s.maxOrder()));
  }
  if (static_cast<Index>(grid.size()) < degree + 1) {
    throw GridTooCoarse("buildSandwichLp: " + std::to_string(grid.size()) +
                        " grid points cannot pin degree " + std::to_string(degree));
  }

  LinearProgram lp;
  lp.sense = side == SandwichSide::Minorant ? LpSense::Maximize : LpSense::Minimize;
  lp.objective = s.moments().head(degree + 1);

  double max_abs_g = 0.0;
  for (double x : grid) max_abs_g = std::max(max_abs_g, std::abs(g(x)));
  const double coeff_cap = 1e3 * (1.0 + max_abs_g);
  lp.lower_bounds = VectorX<double>::Constant(degree + 1, -coeff_cap);
  lp.upper_bounds = VectorX<double>::Constant(degree + 1, coeff_cap);

  for (double x : grid) {
    LpRow row;
    row.coeffs.resize(degree + 1);
    double power = 1.0;
    for (Index j = 0; j <= degree; ++j) {
      row.coeffs(j) = power;
      power *= x;
    }
    row.relation =
        side == SandwichSide::Minorant ? LpRelation::LessEqual : LpRelation::GreaterEqual;
    row.rhs = g(x);
    lp.rows.push_back(std::move(row));
  }
  return lp;
}

/// One-step extension of the moment functional by a single bounded
/// continuous g: recover the Gauss measure, build the constraint grid
/// (uniform plus every node), certify g's envelope, bracket L(g) between
/// the minorant and majorant LP optima, and pick e inside the bracket.
inline SandwichResult extendFunctional(const MomentSequence<double>& s, const FunctionSpec& g,
                                       Index degree, Index grid_size,
                                       PickPolicy pick = PickPolicy::Midpoint,
                                       double tol = 1e-9, double lp_tol = kLpTol) {
  const PsdVerdict<double> verdict = hamburgerCheck(s, tol);
  if (!verdict.is_psd) {
    throw NotAMomentSequence("extendFunctional: Hankel matrix has eigenvalue " +
                             std::to_string(verdict.min_eigenvalue));
  }
  const AtomicMeasure<double> mu = recoverMeasure(s, tol);
  std::vector<double> nodes;
  nodes.reserve(mu.atoms.size());
  for (const auto& atom : mu.atoms) nodes.push_back(atom.node);

  const std::vector<double> grid = sandwichGrid(g.domain(), grid_size, nodes);

  // Envelope certificate with the constant polynomial a = max|g|: then
  // (a^2 + 1)/2 >= a >= |g| everywhere probed.
  const Index probe_count = std::max<Index>(grid_size, 257);
  double max_abs_g = 0.0;
  for (double x : grid) max_abs_g = std::max(max_abs_g, std::abs(g(x)));
  for (Index i = 0; i < probe_count; ++i) {
    const double x = g.domain().lo + (g.domain().hi - g.domain().lo) * static_cast<double>(i) /
                                         static_cast<double>(probe_count - 1);
    max_abs_g = std::max(max_abs_g, std::abs(g(x)));
  }
  if (!envelopeCheck(g, Polynomial<double>::constant(max_abs_g), probe_count)) {
    throw NonConvergence("extendFunctional: envelope certificate failed unexpectedly");
  }

  const LinearProgram lo_lp = buildSandwichLp(s, g, degree, grid, SandwichSide::Minorant);
  const LinearProgram hi_lp = buildSandwichLp(s, g, degree, grid, SandwichSide::Majorant);
  auto hi_future = std::async(std::launch::async, [&] { return solveLp(hi_lp); });
  const LpSolution lo_sol = solveLp(lo_lp);
  const LpSolution hi_sol = hi_future.get();

  const auto raise_bad_status = [](const LpSolution& sol, const char* side) {
    if (sol.status == LpStatus::Infeasible) {
      throw LpInfeasible(std::string("extendFunctional: ") + side + " program infeasible");
    }
    if (sol.status == LpStatus::Unbounded) {
      throw LpUnbounded(std::string("extendFunctional: ") + side + " program unbounded");
    }
  };
  raise_bad_status(lo_sol, "minorant");
  raise_bad_status(hi_sol, "majorant");

  SandwichResult result;
  result.lower = lo_sol.optimum;
  result.upper = hi_sol.optimum;
  result.degree = degree;
  result.grid_size = grid_size;
  result.minorant = Polynomial<double>(lo_sol.x);
  result.majorant = Polynomial<double>(hi_sol.x);
  if (result.lower > result.upper + lp_tol) {
    throw SandwichEmpty(result.lower, result.upper,
                        "extendFunctional: minorant bound " + std::to_string(result.lower) +
                            " exceeds majorant bound " + std::to_string(result.upper) +
                            "; raise the degree or refine the grid");
  }
  switch (pick) {
    case PickPolicy::Lower:
      result.e = result.lower;
      break;
    case PickPolicy::Upper:
      result.e = result.upper;
      break;
    case PickPolicy::Midpoint:
      result.e = 0.5 * (result.lower + result.upper);
      break;
  }
  // Guard against lower/upper crossing within lp_tol.
  result.e = std::clamp(result.e, std::min(result.lower, result.upper),
                        std::max(result.lower, result.upper));
  return result;
}

/// Integrals of the truncated-monomial family g_{n,k} (x^n inside [-k, k],
/// zero beyond |x| = k+1, linear in between) against the recovered measure.
/// Once [-k, k] contains every node the value is exactly the n-th moment of
/// that measure.
inline VectorX<double> truncMonomialLimit(const MomentSequence<double>& s, Index n,
                                          const std::vector<Index>& k_values, double tol = 1e-9) {
  if (n < 0) throw InvalidArgument("truncMonomialLimit: n must be nonnegative");
  if (n > s.maxOrder()) {
    throw DegreeTooHigh("truncMonomialLimit: n exceeds the available moment order");
  }
  for (std::size_t i = 0; i < k_values.size(); ++i) {
    if (k_values[i] < 0 || (i > 0 && k_values[i] <= k_values[i - 1])) {
      throw InvalidArgument("truncMonomialLimit: k values must be strictly increasing and >= 0");
    }
  }
  const AtomicMeasure<double> mu = recoverMeasure(s, tol);
  double reach = 1.0;
  for (const auto& atom : mu.atoms) reach = std::max(reach, std::abs(atom.node));

  VectorX<double> out(static_cast<Index>(k_values.size()));
  for (std::size_t i = 0; i < k_values.size(); ++i) {
    const double k = static_cast<double>(k_values[i]);
    const Interval<double> domain{-(reach + k + 2.0), reach + k + 2.0};
    out(static_cast<Index>(i)) =
        integrate(mu, FunctionSpec::truncMonomial(n, k_values[i], domain));
  }
  return out;
}

}  // namespace momentkit
