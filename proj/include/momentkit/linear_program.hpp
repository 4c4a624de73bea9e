#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "momentkit/errors.hpp"
#include "momentkit/types.hpp"

namespace momentkit {

enum class LpSense { Maximize, Minimize };
enum class LpRelation { LessEqual, GreaterEqual };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpRow {
  VectorX<double> coeffs;
  LpRelation relation = LpRelation::LessEqual;
  double rhs = 0.0;
};

/// Dense LP over free variables: optimize objective . x subject to the
/// rows and an optional entrywise box (empty bound vectors mean none,
/// infinite entries allowed).
struct LinearProgram {
  LpSense sense = LpSense::Maximize;
  VectorX<double> objective;
  std::vector<LpRow> rows;
  VectorX<double> lower_bounds;
  VectorX<double> upper_bounds;
};

/// Infeasible and Unbounded are ordinary outcomes, not errors; optimum and
/// x are meaningful only for Optimal.
struct LpSolution {
  LpStatus status = LpStatus::Optimal;
  double optimum = 0.0;
  VectorX<double> x;
  Index pivots = 0;
};

struct SimplexOptions {
  double pivot_tol = 1e-11;
  double cost_tol = 1e-9;
  /// Cumulative degenerate pivots before the entering rule switches from
  /// Dantzig to Bland (anti-cycling).
  Index bland_after = 200;
  Index max_pivots = 50000;
};

namespace detail {

/// Two-phase primal simplex on a dense tableau. Free variables are split
/// x = u - v; every constraint is normalized to <= with a slack; rows with
/// negative right-hand side are flipped and given a phase-1 artificial.
class SimplexTableau {
 public:
  SimplexTableau(const LinearProgram& lp, const SimplexOptions& opts) : opts_(opts) {
    const Index n = lp.objective.size();
    if (n < 1) throw InvalidArgument("solveLp: objective must have at least one entry");
    for (const LpRow& row : lp.rows) {
      if (row.coeffs.size() != n) {
        throw InvalidArgument("solveLp: constraint width disagrees with objective");
      }
    }
    if ((lp.lower_bounds.size() != 0 && lp.lower_bounds.size() != n) ||
        (lp.upper_bounds.size() != 0 && lp.upper_bounds.size() != n)) {
      throw InvalidArgument("solveLp: bound vectors must be empty or match the objective");
    }

    // <= normal form, box bounds included as rows.
    std::vector<VectorX<double>> a;
    std::vector<double> b;
    for (const LpRow& row : lp.rows) {
      const double sign = row.relation == LpRelation::LessEqual ? 1.0 : -1.0;
      a.push_back(sign * row.coeffs);
      b.push_back(sign * row.rhs);
    }
    const double inf = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < n; ++j) {
      if (lp.upper_bounds.size() != 0 && lp.upper_bounds(j) < inf) {
        VectorX<double> e = VectorX<double>::Zero(n);
        e(j) = 1.0;
        a.push_back(std::move(e));
        b.push_back(lp.upper_bounds(j));
      }
      if (lp.lower_bounds.size() != 0 && lp.lower_bounds(j) > -inf) {
        VectorX<double> e = VectorX<double>::Zero(n);
        e(j) = -1.0;
        a.push_back(std::move(e));
        b.push_back(-lp.lower_bounds(j));
      }
    }

    n_orig_ = n;
    n_split_ = 2 * n;
    m_ = static_cast<Index>(a.size());
    slack_start_ = n_split_;
    art_start_ = n_split_ + m_;

    Index n_art = 0;
    for (double bi : b) n_art += bi < 0.0 ? 1 : 0;
    cols_ = art_start_ + n_art + 1;  // +1 for the right-hand side
    rhs_col_ = cols_ - 1;

    t_ = MatrixX<double>::Zero(m_ + 1, cols_);
    basis_.resize(static_cast<std::size_t>(m_));
    active_.assign(static_cast<std::size_t>(m_), true);

    Index next_art = art_start_;
    for (Index i = 0; i < m_; ++i) {
      const double flip = b[static_cast<std::size_t>(i)] < 0.0 ? -1.0 : 1.0;
      const VectorX<double>& ai = a[static_cast<std::size_t>(i)];
      for (Index j = 0; j < n; ++j) {
        t_(i, j) = flip * ai(j);
        t_(i, n + j) = -flip * ai(j);
      }
      t_(i, slack_start_ + i) = flip;
      t_(i, rhs_col_) = flip * b[static_cast<std::size_t>(i)];
      if (flip < 0.0) {
        t_(i, next_art) = 1.0;
        basis_[static_cast<std::size_t>(i)] = next_art++;
      } else {
        basis_[static_cast<std::size_t>(i)] = slack_start_ + i;
      }
    }

    // Split objective, maximization internally.
    obj_split_ = VectorX<double>::Zero(n_split_);
    const double sense_sign = lp.sense == LpSense::Maximize ? 1.0 : -1.0;
    for (Index j = 0; j < n; ++j) {
      obj_split_(j) = sense_sign * lp.objective(j);
      obj_split_(n + j) = -sense_sign * lp.objective(j);
    }

    rhs_scale_ = 1.0;
    for (double bi : b) rhs_scale_ = std::max(rhs_scale_, std::abs(bi));
  }

  LpStatus run() {
    if (art_start_ + 1 < cols_) {  // artificials present: phase 1
      installObjective(/*phase1=*/true);
      if (!optimize(/*allow_artificial=*/true)) {
        throw NonConvergence("solveLp: phase-1 objective is bounded but no ratio row was found");
      }
      if (t_(m_, rhs_col_) < -opts_.cost_tol * (1.0 + rhs_scale_)) return LpStatus::Infeasible;
      driveOutArtificials();
    }
    installObjective(/*phase1=*/false);
    if (!optimize(/*allow_artificial=*/false)) return LpStatus::Unbounded;
    return LpStatus::Optimal;
  }

  VectorX<double> solution() const {
    VectorX<double> split = VectorX<double>::Zero(n_split_);
    for (Index i = 0; i < m_; ++i) {
      if (!active_[static_cast<std::size_t>(i)]) continue;
      const Index col = basis_[static_cast<std::size_t>(i)];
      if (col < n_split_) split(col) = t_(i, rhs_col_);
    }
    VectorX<double> x(n_orig_);
    for (Index j = 0; j < n_orig_; ++j) x(j) = split(j) - split(n_orig_ + j);
    return x;
  }

  Index pivots() const { return pivot_count_; }

 private:
  /// Objective row holds reduced costs z_j - d_j; its RHS slot carries the
  /// current objective value. Basic columns are priced out.
  void installObjective(bool phase1) {
    t_.row(m_).setZero();
    VectorX<double> d = VectorX<double>::Zero(cols_ - 1);
    if (phase1) {
      for (Index j = art_start_; j < cols_ - 1; ++j) d(j) = -1.0;
    } else {
      d.head(n_split_) = obj_split_;
    }
    for (Index j = 0; j < cols_ - 1; ++j) t_(m_, j) = -d(j);
    for (Index i = 0; i < m_; ++i) {
      if (!active_[static_cast<std::size_t>(i)]) continue;
      const double db = d(basis_[static_cast<std::size_t>(i)]);
      if (db != 0.0) t_.row(m_) += db * t_.row(i);
    }
    cost_scale_ = 1.0 + d.cwiseAbs().maxCoeff();
  }

  /// Returns false when an entering column has no blocking row (unbounded).
  bool optimize(bool allow_artificial) {
    const Index enter_limit = allow_artificial ? cols_ - 1 : art_start_;
    while (true) {
      const double enter_tol = opts_.cost_tol * cost_scale_;
      Index enter = -1;
      if (degenerate_pivots_ >= opts_.bland_after) {
        for (Index j = 0; j < enter_limit; ++j) {
          if (t_(m_, j) < -enter_tol) {
            enter = j;
            break;
          }
        }
      } else {
        double best = -enter_tol;
        for (Index j = 0; j < enter_limit; ++j) {
          if (t_(m_, j) < best) {
            best = t_(m_, j);
            enter = j;
          }
        }
      }
      if (enter < 0) return true;

      Index leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (Index i = 0; i < m_; ++i) {
        if (!active_[static_cast<std::size_t>(i)]) continue;
        const double pivot = t_(i, enter);
        if (pivot <= opts_.pivot_tol) continue;
        const double ratio = t_(i, rhs_col_) / pivot;
        if (ratio < best_ratio - 1e-15 ||
            (ratio < best_ratio + 1e-15 && leave >= 0 &&
             basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          best_ratio = ratio;
          leave = i;
        }
      }
      if (leave < 0) return false;
      if (best_ratio <= 1e-12 * (1.0 + rhs_scale_)) ++degenerate_pivots_;
      pivotOn(leave, enter);
    }
  }

  void pivotOn(Index row, Index col) {
    if (++pivot_count_ > opts_.max_pivots) {
      throw NonConvergence("solveLp: pivot budget exhausted (" +
                           std::to_string(opts_.max_pivots) + ")");
    }
    t_.row(row) /= t_(row, col);
    t_(row, col) = 1.0;
    for (Index r = 0; r <= m_; ++r) {
      if (r == row) continue;
      const double factor = t_(r, col);
      if (factor != 0.0) {
        t_.row(r) -= factor * t_.row(row);
        t_(r, col) = 0.0;
      }
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  /// After phase 1, pivot basic artificials onto any real column; rows that
  /// offer none are redundant and get dropped.
  void driveOutArtificials() {
    for (Index i = 0; i < m_; ++i) {
      if (!active_[static_cast<std::size_t>(i)]) continue;
      if (basis_[static_cast<std::size_t>(i)] < art_start_) continue;
      Index col = -1;
      for (Index j = 0; j < art_start_; ++j) {
        if (std::abs(t_(i, j)) > opts_.pivot_tol) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        pivotOn(i, col);
      } else {
        active_[static_cast<std::size_t>(i)] = false;
      }
    }
  }

  SimplexOptions opts_;
  MatrixX<double> t_;
  std::vector<Index> basis_;
  std::vector<bool> active_;
  VectorX<double> obj_split_;
  Index n_orig_ = 0;
  Index n_split_ = 0;
  Index m_ = 0;
  Index cols_ = 0;
  Index rhs_col_ = 0;
  Index slack_start_ = 0;
  Index art_start_ = 0;
  Index pivot_count_ = 0;
  Index degenerate_pivots_ = 0;
  double rhs_scale_ = 1.0;
  double cost_scale_ = 1.0;
};

}  // namespace detail

/// Dense two-phase simplex. Deterministic: identical inputs take identical
/// pivot sequences.
inline LpSolution solveLp(const LinearProgram& lp, const SimplexOptions& opts = {}) {
  detail::SimplexTableau tableau(lp, opts);
  LpSolution sol;
  sol.status = tableau.run();
  sol.pivots = tableau.pivots();
  if (sol.status == LpStatus::Optimal) {
    sol.x = tableau.solution();
    sol.optimum = lp.objective.dot(sol.x);
  }
  return sol;
}

}  // namespace momentkit
