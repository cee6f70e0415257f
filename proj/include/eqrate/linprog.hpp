// Copyright 2026 The eqrate Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EQRATE_LINPROG_HPP_
#define EQRATE_LINPROG_HPP_

// Dense two-phase tableau simplex for small and medium linear programs:
//
//   minimize    c^T x
//   subject to  A_ub x <= b_ub
//               A_eq x  = b_eq
//               x_i >= 0 unless x_i is marked free.
//
// Pricing is Dantzig's rule, falling back to Bland's rule after a run of
// degenerate pivots. The ratio test is Harris' two-pass variant, which
// prefers large pivot elements among near-ties, and the final basic solution
// is recomputed from the original data to shed accumulated tableau error.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "eqrate/errors.hpp"

namespace eqrate {

struct LinearProgram {
  Eigen::VectorXd objective;
  Eigen::MatrixXd a_ub;
  Eigen::VectorXd b_ub;
  Eigen::MatrixXd a_eq;
  Eigen::VectorXd b_eq;
  // Empty means every variable is nonnegative.
  std::vector<bool> free_variables;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

inline std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration limit";
  }
  return "unknown";
}

struct LpOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-11;
  double pivot_tol = 1e-9;
  int max_iterations = 500000;
  int degenerate_pivots_before_bland = 50;
};

struct LpResult {
  LpStatus status = LpStatus::kIterationLimit;
  Eigen::VectorXd x;
  double objective = 0.0;
  int iterations = 0;
};

namespace internal {

class Tableau {
 public:
  // Row `rows` is the objective row holding reduced costs; the last column
  // holds the right-hand side (and minus the objective value).
  Tableau(Eigen::Index rows, Eigen::Index cols)
      : t_(Eigen::MatrixXd::Zero(rows + 1, cols + 1)), basis_(rows, -1) {}

  Eigen::MatrixXd& t() { return t_; }
  std::vector<Eigen::Index>& basis() { return basis_; }
  Eigen::Index rows() const { return t_.rows() - 1; }
  Eigen::Index cols() const { return t_.cols() - 1; }
  Eigen::Index rhs() const { return t_.cols() - 1; }

  void pivot(Eigen::Index r, Eigen::Index c) {
    t_.row(r) /= t_(r, c);
    t_(r, c) = 1.0;
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f == 0.0) continue;
      t_.row(i) -= f * t_.row(r);
      t_(i, c) = 0.0;
    }
    basis_[r] = c;
  }

  // Runs simplex iterations on the current objective row. Columns with
  // allowed[c] == false never enter the basis.
  LpStatus run(const std::vector<bool>& allowed, const LpOptions& options,
               int& iterations) {
    const Eigen::Index obj = rows();
    int degenerate_run = 0;
    while (true) {
      if (iterations >= options.max_iterations) return LpStatus::kIterationLimit;
      const bool bland = degenerate_run >= options.degenerate_pivots_before_bland;
      Eigen::Index enter = -1;
      double best = -options.optimality_tol;
      for (Eigen::Index c = 0; c < cols(); ++c) {
        if (!allowed[c]) continue;
        const double d = t_(obj, c);
        if (d < best) {
          enter = c;
          if (bland) break;
          best = d;
        }
      }
      if (enter < 0) return LpStatus::kOptimal;
      // Pass 1: the largest step keeping every basic variable above
      // -feasibility_tol. Pass 2: among rows blocking within that step,
      // the largest pivot element (smallest basic index under Bland).
      double bound = std::numeric_limits<double>::infinity();
      for (Eigen::Index r = 0; r < rows(); ++r) {
        const double a = t_(r, enter);
        if (a <= options.pivot_tol) continue;
        bound = std::min(bound, (std::max(t_(r, rhs()), 0.0) + options.feasibility_tol) / a);
      }
      if (!std::isfinite(bound)) return LpStatus::kUnbounded;
      Eigen::Index leave = -1;
      for (Eigen::Index r = 0; r < rows(); ++r) {
        const double a = t_(r, enter);
        if (a <= options.pivot_tol || std::max(t_(r, rhs()), 0.0) / a > bound) continue;
        const bool better = leave < 0 || (bland ? basis_[r] < basis_[leave]
                                                : a > t_(leave, enter));
        if (better) leave = r;
      }
      const double best_ratio = std::max(t_(leave, rhs()), 0.0) / t_(leave, enter);
      degenerate_run = best_ratio <= 1e-14 ? degenerate_run + 1 : 0;
      pivot(leave, enter);
      ++iterations;
    }
  }

 private:
  Eigen::MatrixXd t_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace internal

inline LpResult solve_lp(const LinearProgram& lp, const LpOptions& options = {}) {
  const Eigen::Index n = lp.objective.size();
  const Eigen::Index m_ub = lp.a_ub.rows();
  const Eigen::Index m_eq = lp.a_eq.rows();
  if ((m_ub > 0 && lp.a_ub.cols() != n) || (m_eq > 0 && lp.a_eq.cols() != n) ||
      lp.b_ub.size() != m_ub || lp.b_eq.size() != m_eq) {
    throw InvalidArgument("linear program dimensions are inconsistent");
  }
  if (!lp.free_variables.empty() &&
      static_cast<Eigen::Index>(lp.free_variables.size()) != n) {
    throw InvalidArgument("free_variables must have one entry per variable");
  }

  // Column layout: [x (n) | negative parts of free x | slacks (m_ub) |
  // artificials (m)].
  std::vector<Eigen::Index> negative_part(n, -1);
  Eigen::Index cols = n;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!lp.free_variables.empty() && lp.free_variables[j]) negative_part[j] = cols++;
  }
  const Eigen::Index slack0 = cols;
  cols += m_ub;
  const Eigen::Index art0 = cols;
  const Eigen::Index m = m_ub + m_eq;
  cols += m;

  internal::Tableau tab(m, cols);
  Eigen::MatrixXd& t = tab.t();
  const Eigen::Index rhs = tab.rhs();
  std::vector<bool> needs_artificial(m, false);
  for (Eigen::Index i = 0; i < m; ++i) {
    const bool is_ub = i < m_ub;
    const auto row = is_ub ? lp.a_ub.row(i) : lp.a_eq.row(i - m_ub);
    double b = is_ub ? lp.b_ub(i) : lp.b_eq(i - m_ub);
    const double sign = b < 0.0 ? -1.0 : 1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      t(i, j) = sign * row(j);
      if (negative_part[j] >= 0) t(i, negative_part[j]) = -sign * row(j);
    }
    if (is_ub) t(i, slack0 + i) = sign;
    t(i, rhs) = sign * b;
    if (is_ub && sign > 0.0) {
      tab.basis()[i] = slack0 + i;
    } else {
      needs_artificial[i] = true;
      t(i, art0 + i) = 1.0;
      tab.basis()[i] = art0 + i;
    }
  }

  const Eigen::MatrixXd original = t.topRows(m);
  LpResult result;
  std::vector<bool> allowed(cols, true);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!needs_artificial[i]) allowed[art0 + i] = false;
  }

  // Phase 1: minimize the sum of artificials.
  bool any_artificial = false;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!needs_artificial[i]) continue;
    any_artificial = true;
    t.row(m) -= t.row(i);
    t(m, art0 + i) = 0.0;
  }
  double b_scale = 1.0;
  for (Eigen::Index i = 0; i < m; ++i) b_scale = std::max(b_scale, std::abs(t(i, rhs)));
  if (any_artificial) {
    LpStatus status = tab.run(allowed, options, result.iterations);
    if (status == LpStatus::kIterationLimit) {
      result.status = status;
      return result;
    }
    if (-t(m, rhs) > options.feasibility_tol * b_scale) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    // Pivot zero-level artificials out of the basis where possible; rows
    // where that is impossible are redundant and stay inert.
    for (Eigen::Index r = 0; r < m; ++r) {
      if (tab.basis()[r] < art0) continue;
      Eigen::Index best = -1;
      double best_abs = 1e-9;
      for (Eigen::Index c = 0; c < art0; ++c) {
        if (std::abs(t(r, c)) > best_abs) {
          best_abs = std::abs(t(r, c));
          best = c;
        }
      }
      if (best >= 0) tab.pivot(r, best);
    }
  }
  for (Eigen::Index c = art0; c < cols; ++c) allowed[c] = false;

  // Phase 2.
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(cols);
  for (Eigen::Index j = 0; j < n; ++j) {
    cost(j) = lp.objective(j);
    if (negative_part[j] >= 0) cost(negative_part[j]) = -lp.objective(j);
  }
  t.row(m).setZero();
  for (Eigen::Index c = 0; c < cols; ++c) t(m, c) = cost(c);
  for (Eigen::Index r = 0; r < m; ++r) {
    const double cb = cost(tab.basis()[r]);
    if (cb != 0.0) t.row(m) -= cb * t.row(r);
  }
  LpStatus status = tab.run(allowed, options, result.iterations);
  result.status = status;
  if (status != LpStatus::kOptimal) return result;

  Eigen::VectorXd full = Eigen::VectorXd::Zero(cols);
  for (Eigen::Index r = 0; r < m; ++r) full(tab.basis()[r]) = std::max(t(r, rhs), 0.0);
  if (m > 0) {
    // Recompute x_B from B x_B = b with the original columns.
    Eigen::MatrixXd basis_matrix(m, m);
    for (Eigen::Index r = 0; r < m; ++r) basis_matrix.col(r) = original.col(tab.basis()[r]);
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(basis_matrix);
    if (lu.isInvertible()) {
      const Eigen::VectorXd xb = lu.solve(original.col(rhs));
      const double residual = (basis_matrix * xb - original.col(rhs)).cwiseAbs().maxCoeff();
      if (residual <= options.feasibility_tol * b_scale) {
        for (Eigen::Index r = 0; r < m; ++r) full(tab.basis()[r]) = std::max(xb(r), 0.0);
      }
    }
  }
  result.x.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    result.x(j) = full(j) - (negative_part[j] >= 0 ? full(negative_part[j]) : 0.0);
  }
  result.objective = lp.objective.dot(result.x);
  return result;
}

}  // namespace eqrate

#endif  // EQRATE_LINPROG_HPP_
