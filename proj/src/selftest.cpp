#include "momentkit/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "momentkit/function_spec.hpp"
#include "momentkit/json_io.hpp"
#include "momentkit/linear_program.hpp"
#include "momentkit/moments.hpp"
#include "momentkit/polynomial.hpp"
#include "momentkit/quadrature.hpp"
#include "momentkit/roots.hpp"
#include "momentkit/sandwich.hpp"
#include "momentkit/sos.hpp"

namespace momentkit {
namespace {

using Rng = std::mt19937_64;

struct SuiteResult {
  std::string name;
  bool pass;
  std::string detail;
};

struct Failure {
  std::string detail;
};

/// Random atoms with separated nodes; moments by direct summation.
AtomicMeasure<double> randomMeasure(Rng& rng, Index max_atoms, double min_gap = 0.5) {
  std::uniform_int_distribution<Index> count_dist(1, max_atoms);
  std::uniform_real_distribution<double> node_dist(-5.0, 5.0);
  std::uniform_real_distribution<double> weight_dist(0.1, 2.0);
  const Index count = count_dist(rng);
  std::vector<double> nodes;
  while (static_cast<Index>(nodes.size()) < count) {
    const double x = node_dist(rng);
    bool ok = true;
    for (double y : nodes) ok = ok && std::abs(x - y) >= min_gap;
    if (ok) nodes.push_back(x);
  }
  std::sort(nodes.begin(), nodes.end());
  AtomicMeasure<double> mu;
  for (double x : nodes) mu.atoms.push_back({x, weight_dist(rng)});
  return mu;
}

MomentSequence<double> momentsOf(const AtomicMeasure<double>& mu, Index order) {
  VectorX<double> s = VectorX<double>::Zero(order + 1);
  for (const auto& atom : mu.atoms) {
    double power = atom.weight;
    for (Index k = 0; k <= order; ++k) {
      s(k) += power;
      power *= atom.node;
    }
  }
  return MomentSequence<double>(s);
}

Polynomial<double> randomPolynomial(Rng& rng, Index max_degree, double coeff_range = 3.0) {
  std::uniform_int_distribution<Index> deg_dist(0, max_degree);
  std::uniform_real_distribution<double> coeff_dist(-coeff_range, coeff_range);
  const Index d = deg_dist(rng);
  VectorX<double> c(d + 1);
  for (Index j = 0; j <= d; ++j) c(j) = coeff_dist(rng);
  return Polynomial<double>(std::move(c));
}

// ---- tiny exhaustive LP oracle for <= 3 variables ----

struct OracleVerdict {
  LpStatus status = LpStatus::Optimal;
  double optimum = 0.0;
};

/// All vertices of {rows . x <= rhs} intersected with [-box, box]^n, by
/// solving every n-subset of tight rows.
std::vector<VectorX<double>> enumerateVertices(const std::vector<VectorX<double>>& a,
                                               const std::vector<double>& b, Index n, double box) {
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
  // Fixed-depth subset walk (n <= 3).
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

OracleVerdict lpOracle(const LinearProgram& lp) {
  const Index n = lp.objective.size();
  std::vector<VectorX<double>> a;
  std::vector<double> b;
  for (const LpRow& row : lp.rows) {
    const double sign = row.relation == LpRelation::LessEqual ? 1.0 : -1.0;
    a.push_back(sign * row.coeffs);
    b.push_back(sign * row.rhs);
  }
  const double inf = std::numeric_limits<double>::infinity();
  for (Index j = 0; j < n; ++j) {
    VectorX<double> e = VectorX<double>::Zero(n);
    e(j) = 1.0;
    if (lp.upper_bounds.size() != 0 && lp.upper_bounds(j) < inf) {
      a.push_back(e);
      b.push_back(lp.upper_bounds(j));
    }
    if (lp.lower_bounds.size() != 0 && lp.lower_bounds(j) > -inf) {
      a.push_back(-e);
      b.push_back(-lp.lower_bounds(j));
    }
  }
  const VectorX<double> c =
      lp.sense == LpSense::Maximize ? lp.objective : VectorX<double>(-lp.objective);

  OracleVerdict verdict;
  const std::vector<VectorX<double>> vertices = enumerateVertices(a, b, n, 1e7);
  bool feasible = false;
  double best = -inf;
  VectorX<double> best_x;
  for (const VectorX<double>& x : vertices) {
    feasible = true;
    if (c.dot(x) > best) {
      best = c.dot(x);
      best_x = x;
    }
  }
  if (!feasible) {
    verdict.status = LpStatus::Infeasible;
    return verdict;
  }

  // Recession cone: a nonzero direction with A d <= 0 improving c means the
  // LP is unbounded.
  std::vector<double> zero_rhs(b.size(), 0.0);
  for (const VectorX<double>& d : enumerateVertices(a, zero_rhs, n, 1.0)) {
    if (c.dot(d) > 1e-7) {
      verdict.status = LpStatus::Unbounded;
      return verdict;
    }
  }
  verdict.status = LpStatus::Optimal;
  verdict.optimum = lp.sense == LpSense::Maximize ? best : -best;
  return verdict;
}

LinearProgram randomLp(Rng& rng) {
  std::uniform_int_distribution<Index> nvar_dist(1, 3);
  std::uniform_int_distribution<Index> nrow_dist(1, 8);
  std::uniform_int_distribution<int> coeff_dist(-5, 5);
  std::uniform_int_distribution<int> coin(0, 1);
  LinearProgram lp;
  const Index n = nvar_dist(rng);
  const Index m = nrow_dist(rng);
  lp.sense = coin(rng) ? LpSense::Maximize : LpSense::Minimize;
  lp.objective.resize(n);
  for (Index j = 0; j < n; ++j) lp.objective(j) = coeff_dist(rng);
  for (Index i = 0; i < m; ++i) {
    LpRow row;
    row.coeffs.resize(n);
    bool nonzero = false;
    for (Index j = 0; j < n; ++j) {
      row.coeffs(j) = coeff_dist(rng);
      nonzero = nonzero || row.coeffs(j) != 0.0;
    }
    if (!nonzero) row.coeffs(0) = 1.0;
    row.relation = coin(rng) ? LpRelation::LessEqual : LpRelation::GreaterEqual;
    row.rhs = coeff_dist(rng);
    lp.rows.push_back(std::move(row));
  }
  if (coin(rng)) {
    std::uniform_int_distribution<int> lo_dist(-3, 0);
    std::uniform_int_distribution<int> hi_dist(0, 3);
    lp.lower_bounds.resize(n);
    lp.upper_bounds.resize(n);
    for (Index j = 0; j < n; ++j) {
      lp.lower_bounds(j) = lo_dist(rng);
      lp.upper_bounds(j) = hi_dist(rng);
    }
  }
  return lp;
}

// ---- suites ----

void expect(bool cond, const std::string& detail) {
  if (!cond) throw Failure{detail};
}

SuiteResult runSuite(const std::string& name, Rng& rng, void (*body)(Rng&)) {
  try {
    body(rng);
    return {name, true, "ok"};
  } catch (const Failure& f) {
    return {name, false, f.detail};
  } catch (const std::exception& e) {
    return {name, false, std::string("exception: ") + e.what()};
  }
}

void polynomialArithmeticSuite(Rng& rng) {
  std::uniform_real_distribution<double> x_dist(-10.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Polynomial<double> p = randomPolynomial(rng, 8);
    const Polynomial<double> q = randomPolynomial(rng, 8);
    const double x = x_dist(rng);
    // Naive power-sum evaluation as the evaluation oracle.
    double naive = 0.0, power = 1.0;
    for (Index j = 0; j < p.coeffs().size(); ++j) {
      naive += p.coeff(j) * power;
      power *= x;
    }
    const double scale = std::max(1.0, std::abs(naive));
    expect(std::abs(p(x) - naive) <= 1e-12 * scale, "Horner disagrees with power-sum evaluation");
    expect(std::abs((p + q)(x) - (p(x) + q(x))) <= 1e-9 * std::max(1.0, std::abs(p(x) + q(x))),
           "sum evaluates wrong");
    expect(std::abs((p * q)(x) - p(x) * q(x)) <= 1e-7 * std::max(1.0, std::abs(p(x) * q(x))),
           "product evaluates wrong");
    expect((p - p).isZero(), "p - p must cancel to the zero polynomial");
  }
}

void rootReconstructionSuite(Rng& rng) {
  std::uniform_real_distribution<double> real_dist(-3.0, 3.0);
  std::uniform_real_distribution<double> imag_dist(0.3, 3.0);
  std::uniform_real_distribution<double> lead_dist(0.5, 2.0);
  std::uniform_int_distribution<int> pairs_dist(0, 3);
  std::uniform_int_distribution<int> reals_dist(0, 2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::complex<double>> roots;
    const int n_pairs = pairs_dist(rng);
    const int n_reals = std::max(1, reals_dist(rng));
    for (int i = 0; i < n_pairs; ++i) {
      const std::complex<double> z(real_dist(rng), imag_dist(rng));
      roots.push_back(z);
      roots.push_back(std::conj(z));
    }
    for (int i = 0; i < n_reals; ++i) roots.emplace_back(real_dist(rng), 0.0);
    const double lead = lead_dist(rng);
    const Polynomial<double> f = polynomialFromRoots(roots) * lead;

    const ComplexRootSet found = findRoots(f);
    expect(static_cast<Index>(found.roots.size()) == f.degree(),
           "root multiset size must equal the degree");
    const Polynomial<double> rebuilt = polynomialFromRoots(found.roots) * found.leading;
    expect(relativeCoeffDistance(rebuilt, f) <= 1e-8, "reconstruction from roots drifted");
    for (const auto& z : found.roots) {
      if (z.imag() != 0.0) {
        const bool has_conj = std::any_of(found.roots.begin(), found.roots.end(),
                                          [&](const std::complex<double>& w) {
                                            return w == std::conj(z);
                                          });
        expect(has_conj, "conjugate closure violated");
      }
    }
  }
}

void hankelQuadraticFormSuite(Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  // Index 0 is excluded: driving s_0 below zero would violate the sequence
  // type's positive-mass invariant before the Hankel test could run.
  std::uniform_int_distribution<Index> diag_pick(1, 2);
  std::uniform_real_distribution<double> margin_dist(0.5, 2.0);
  const double tol = 1e-9;
  for (int trial = 0; trial < 50; ++trial) {
    const AtomicMeasure<double> mu = randomMeasure(rng, 5);
    const MomentSequence<double> s = momentsOf(mu, 10);
    const PsdVerdict<double> verdict = hamburgerCheck(s, tol);
    expect(verdict.is_psd, "moments of a genuine measure must pass");

    const HankelMatrix<double> h = buildHankel(s, 5);
    for (int probe = 0; probe < 20; ++probe) {
      VectorX<double> c(6);
      for (Index j = 0; j < 6; ++j) c(j) = gauss(rng);
      c.normalize();
      expect(c.dot(h.entries * c) >= -10.0 * tol * h.entries.norm(),
             "quadratic form went negative on a PSD sequence");
    }

    // Push one diagonal entry below the spectrum to force a refutation.
    const auto eig = jacobiEigenSolve<double>(h.entries);
    const Index i = diag_pick(rng);
    VectorX<double> bad = s.moments();
    bad(2 * i) -= s[2 * i] + margin_dist(rng) * std::max(1.0, eig.eigenvalues(5)) + 1.0;
    const MomentSequence<double> s_bad(bad);
    const PsdVerdict<double> refuted = hamburgerCheck(s_bad, tol);
    expect(!refuted.is_psd, "perturbed sequence must fail");
    expect(refuted.witness.has_value(), "failure must carry a witness");
    const HankelMatrix<double> h_bad = buildHankel(s_bad, 5);
    expect(refuted.witness->dot(h_bad.entries * *refuted.witness) < 0.0,
           "witness must certify a negative quadratic form");
  }
}

void functionalSquaresSuite(Rng& rng) {
  for (int trial = 0; trial < 100; ++trial) {
    const AtomicMeasure<double> mu = randomMeasure(rng, 5);
    const MomentSequence<double> s = momentsOf(mu, 10);
    const HankelMatrix<double> h = buildHankel(s, 5);
    const Polynomial<double> p = randomPolynomial(rng, 5);
    VectorX<double> c = VectorX<double>::Zero(6);
    c.head(p.coeffs().size()) = p.coeffs();
    const double via_form = c.dot(h.entries * c);
    const double via_functional = applyFunctional(s, p * p);
    expect(std::abs(via_functional - via_form) <= 1e-10 * std::max(1.0, std::abs(via_form)),
           "L(p^2) must equal the Hankel quadratic form");
  }
}

void sosSuite(Rng& rng) {
  for (int trial = 0; trial < 100; ++trial) {
    const Polynomial<double> p = randomPolynomial(rng, 6);
    const Polynomial<double> q = randomPolynomial(rng, 6);
    const Polynomial<double> f = p * p + q * q;
    if (f.isZero()) continue;
    const SosResult result = sosDecompose(f);
    expect(std::holds_alternative<SosCertificate>(result),
           "a sum of squares must yield a certificate");
    const auto& cert = std::get<SosCertificate>(result);
    expect(cert.residual <= kSosTol, "certificate residual too large");
    expect(verifyCertificate(f, cert), "certificate must verify");
    expect(2 * cert.p.degree() <= f.degree() && 2 * cert.q.degree() <= f.degree(),
           "certificate degrees exceed half the input degree");
  }
  for (int trial = 0; trial < 50; ++trial) {
    Polynomial<double> f = randomPolynomial(rng, 7);
    if (f.degree() % 2 == 0) f = f * Polynomial<double>::monomial(1);  // force odd degree
    if (f.isZero()) continue;
    const SosResult result = sosDecompose(f);
    expect(std::holds_alternative<NegativityWitness>(result),
           "odd-degree polynomial must yield a witness");
    const auto& w = std::get<NegativityWitness>(result);
    expect(f(w.x0) < 0.0, "witness point must evaluate negative");
  }
}

void measureRoundtripSuite(Rng& rng) {
  for (int trial = 0; trial < 50; ++trial) {
    const AtomicMeasure<double> mu = randomMeasure(rng, 6);
    const Index n = static_cast<Index>(mu.atoms.size());
    const MomentSequence<double> s = momentsOf(mu, 2 * n);
    const AtomicMeasure<double> back = recoverMeasure(s);
    expect(back.atoms.size() == mu.atoms.size(), "atom count must round-trip");
    for (std::size_t i = 0; i < mu.atoms.size(); ++i) {
      expect(std::abs(back.atoms[i].node - mu.atoms[i].node) <= 1e-6,
             "node drifted past 1e-6");
      expect(std::abs(back.atoms[i].weight - mu.atoms[i].weight) <= 1e-6,
             "weight drifted past 1e-6");
    }
    const MomentReport<double> report = verifyMoments(back, s, 2 * n, 1e-8);
    expect(report.all_pass, "recovered measure must reproduce all source moments");
  }
}

void simplexSuite(Rng& rng) {
  for (int trial = 0; trial < 100; ++trial) {
    const LinearProgram lp = randomLp(rng);
    const OracleVerdict expected = lpOracle(lp);
    const LpSolution got = solveLp(lp);
    expect(got.status == expected.status, "status disagrees with vertex enumeration");
    if (expected.status == LpStatus::Optimal) {
      expect(std::abs(got.optimum - expected.optimum) <= 1e-9 * std::max(1.0, std::abs(expected.optimum)),
             "optimum disagrees with vertex enumeration");
    }
  }
}

void sandwichBracketSuite(Rng&) {
  const MomentSequence<double> s{1.0, 0.0, 1.0, 0.0, 3.0, 0.0, 15.0};
  const AtomicMeasure<double> mu = recoverMeasure(s);
  const Interval<double> domain{-4.0, 4.0};
  const FunctionSpec specs[] = {FunctionSpec::absValue(domain), FunctionSpec::gaussianBump(domain)};
  for (const FunctionSpec& g : specs) {
    const double integral = integrate(mu, g);
    double prev_width = std::numeric_limits<double>::infinity();
    for (Index degree : {Index(0), Index(2), Index(4)}) {
      const SandwichResult r = extendFunctional(s, g, degree, 201);
      expect(r.lower <= integral + kLpTol, "minorant bound exceeds the measure integral");
      expect(integral <= r.upper + kLpTol, "measure integral exceeds the majorant bound");
      const double width = r.upper - r.lower;
      expect(width <= prev_width + kLpTol, "sandwich must tighten as degree grows");
      prev_width = width;
      expect(r.e >= -kLpTol, "nonnegative g must give a nonnegative extension value");
    }
  }
}

void positivityThreeCasesSuite(Rng& rng) {
  const MomentSequence<double> s{1.0, 0.0, 1.0, 0.0, 3.0, 0.0, 15.0};
  const Interval<double> domain{-4.0, 4.0};
  const FunctionSpec g = FunctionSpec::absValue(domain);
  const Index degree = 4;
  const SandwichResult r = extendFunctional(s, g, degree, 201, PickPolicy::Lower);

  const AtomicMeasure<double> mu = recoverMeasure(s);
  std::vector<double> nodes;
  for (const auto& atom : mu.atoms) nodes.push_back(atom.node);
  const std::vector<double> grid = sandwichGrid(domain, 201, nodes);

  std::uniform_real_distribution<double> d_dist(0.5, 3.0);
  for (int mode = -1; mode <= 1; ++mode) {
    for (int trial = 0; trial < 60; ++trial) {
      const double d = mode == 0 ? 0.0 : mode * d_dist(rng);
      Polynomial<double> f = randomPolynomial(rng, degree);
      double min_val = std::numeric_limits<double>::infinity();
      for (double x : grid) min_val = std::min(min_val, f(x) + d * g(x));
      f = f + Polynomial<double>::constant(1e-9 - min_val);
      const double extended = applyFunctional(s, f) + d * r.e;
      expect(extended >= -1e-7, "grid-nonnegative combination mapped below zero");
    }
  }
}

void jsonRoundtripSuite(Rng& rng) {
  for (int trial = 0; trial < 50; ++trial) {
    const AtomicMeasure<double> mu = randomMeasure(rng, 4);
    const MomentSequence<double> s = momentsOf(mu, 6);
    const Polynomial<double> p = randomPolynomial(rng, 6);

    const std::string s_text = dumpJson(toJson(s));
    expect(dumpJson(toJson(momentsFromJson(parseJson(s_text, "selftest")))) == s_text,
           "moment sequence JSON must round-trip byte-identically");
    const std::string p_text = dumpJson(toJson(p));
    expect(dumpJson(toJson(polynomialFromJson(parseJson(p_text, "selftest")))) == p_text,
           "polynomial JSON must round-trip byte-identically");
    const std::string mu_text = dumpJson(toJson(mu));
    expect(dumpJson(toJson(measureFromJson(parseJson(mu_text, "selftest")))) == mu_text,
           "measure JSON must round-trip byte-identically");
  }
}

void truncatedLimitSuite(Rng& rng) {
  for (int trial = 0; trial < 25; ++trial) {
    const AtomicMeasure<double> mu = randomMeasure(rng, 3);
    const Index n_atoms = static_cast<Index>(mu.atoms.size());
    const MomentSequence<double> s = momentsOf(mu, 2 * n_atoms);
    double reach = 0.0;
    for (const auto& atom : mu.atoms) reach = std::max(reach, std::abs(atom.node));
    const Index k_enclosing = static_cast<Index>(std::ceil(reach)) + 1;
    const Index n = std::min<Index>(2, s.maxOrder());
    const VectorX<double> values =
        truncMonomialLimit(s, n, {k_enclosing, k_enclosing + 1, k_enclosing + 2});
    for (Index i = 0; i < values.size(); ++i) {
      expect(std::abs(values(i) - s[n]) <= 1e-8 * std::max(1.0, std::abs(s[n])),
             "enclosing truncation must integrate to the exact moment");
    }
  }
}

}  // namespace

int runSelftest(std::uint64_t seed, std::ostream& out) {
  struct Entry {
    const char* name;
    void (*body)(Rng&);
  };
  const Entry entries[] = {
      {"polynomial-arithmetic", polynomialArithmeticSuite},
      {"root-reconstruction", rootReconstructionSuite},
      {"hankel-quadratic-form", hankelQuadraticFormSuite},
      {"functional-squares", functionalSquaresSuite},
      {"sos-certificates", sosSuite},
      {"measure-roundtrip", measureRoundtripSuite},
      {"simplex-vs-enumeration", simplexSuite},
      {"sandwich-brackets", sandwichBracketSuite},
      {"positivity-three-cases", positivityThreeCasesSuite},
      {"truncated-monomial-limit", truncatedLimitSuite},
      {"json-roundtrip", jsonRoundtripSuite},
  };

  int failures = 0;
  out << std::left << std::setw(28) << "suite" << "result\n";
  out << std::string(40, '-') << "\n";
  std::uint64_t salt = 0;
  for (const Entry& entry : entries) {
    Rng rng(seed + 0x9e3779b97f4a7c15ULL * ++salt);
    const SuiteResult result = runSuite(entry.name, rng, entry.body);
    out << std::left << std::setw(28) << result.name << (result.pass ? "PASS" : "FAIL");
    if (!result.pass) {
      ++failures;
      out << "  " << result.detail;
    }
    out << "\n";
  }
  out << std::string(40, '-') << "\n";
  out << (failures == 0 ? "all suites passed" : std::to_string(failures) + " suite(s) failed")
      << "\n";
  return failures;
}

}  // namespace momentkit
