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

#ifndef EQRATE_POLYTOPE_HPP_
#define EQRATE_POLYTOPE_HPP_

// Selects the entropy- or Gini-optimal point of
//
//   P = { x in simplex : A_ub x <= b_ub, A_eq x = b_eq }.
//
// Feasibility is settled first with a slack LP. When P has no point with
// strict slack the entropy optimum can sit on a face of the simplex, so the
// maximal support of P is found with a sequence of LPs and the dual is solved
// on that support only. On the restricted support the optimum is strictly
// positive and the multipliers are finite.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

#include "eqrate/errors.hpp"
#include "eqrate/gibbs_dual.hpp"
#include "eqrate/linprog.hpp"

namespace eqrate {

struct PolytopeProblem {
  Eigen::MatrixXd a_ub;
  Eigen::VectorXd b_ub;
  Eigen::MatrixXd a_eq;
  Eigen::VectorXd b_eq;
  // Empty means unit weights.
  Eigen::VectorXd weights;
  Potential potential = Potential::kNegEntropy;
};

struct PolytopeOptions {
  DualOptions dual;
  // Largest constraint slack tolerated before the polytope counts as empty,
  // relative to the largest constraint coefficient.
  double feasibility_tol = 1e-9;
  double support_tol = 1e-10;
};

struct PolytopePoint {
  Eigen::VectorXd x;
  Eigen::VectorXd ub_multipliers;
  Eigen::VectorXd eq_multipliers;
  // Amount by which b_ub had to be loosened to absorb LP round-off.
  double relaxation = 0.0;
  int iterations = 0;
  bool converged = false;
};

namespace internal {

inline double coefficient_scale(const PolytopeProblem& p) {
  double s = 1.0;
  if (p.a_ub.size() > 0) s = std::max(s, p.a_ub.cwiseAbs().maxCoeff());
  if (p.a_eq.size() > 0) s = std::max(s, p.a_eq.cwiseAbs().maxCoeff());
  return s;
}

// Simplex constraint appended to the equality rows.
inline void with_simplex(const Eigen::MatrixXd& a_eq, const Eigen::VectorXd& b_eq,
                         Eigen::Index n, Eigen::Index extra_cols,
                         Eigen::MatrixXd& out_a, Eigen::VectorXd& out_b) {
  const Eigen::Index m = a_eq.rows();
  out_a = Eigen::MatrixXd::Zero(m + 1, n + extra_cols);
  if (m > 0) out_a.topLeftCorner(m, n) = a_eq;
  out_a.row(m).head(n).setOnes();
  out_b.resize(m + 1);
  if (m > 0) out_b.head(m) = b_eq;
  out_b(m) = 1.0;
}

// Indices that are positive somewhere in P.
inline std::vector<Eigen::Index> maximal_support(const PolytopeProblem& p,
                                                 double support_tol) {
  const Eigen::Index n = p.a_ub.cols() > 0 ? p.a_ub.cols() : p.a_eq.cols();
  LinearProgram lp;
  lp.a_ub = p.a_ub;
  lp.b_ub = p.b_ub;
  with_simplex(p.a_eq, p.b_eq, n, 0, lp.a_eq, lp.b_eq);
  std::vector<bool> in_support(n, false);
  Eigen::Index remaining = n;
  while (remaining > 0) {
    lp.objective = Eigen::VectorXd::Zero(n);
    for (Eigen::Index a = 0; a < n; ++a) {
      if (!in_support[a]) lp.objective(a) = -1.0;
    }
    const LpResult res = solve_lp(lp);
    if (res.status != LpStatus::kOptimal) {
      throw Error("support detection failed: " + to_string(res.status));
    }
    if (-res.objective <= 1e-9) break;
    Eigen::Index best = -1;
    for (Eigen::Index a = 0; a < n; ++a) {
      if (in_support[a]) continue;
      if (best < 0 || res.x(a) > res.x(best)) best = a;
      if (res.x(a) > support_tol) {
        in_support[a] = true;
        --remaining;
      }
    }
    if (!in_support[best]) {
      in_support[best] = true;
      --remaining;
    }
  }
  std::vector<Eigen::Index> out;
  for (Eigen::Index a = 0; a < n; ++a) {
    if (in_support[a]) out.push_back(a);
  }
  return out;
}

}  // namespace internal

inline PolytopePoint select_point(PolytopeProblem problem,
                                  const PolytopeOptions& options = {}) {
  const Eigen::Index n = problem.a_ub.cols() > 0 ? problem.a_ub.cols()
                                                 : problem.a_eq.cols();
  if (n == 0) throw InvalidArgument("polytope has no variables");
  const Eigen::Index m_ub = problem.a_ub.rows();
  const Eigen::Index m_eq = problem.a_eq.rows();
  if (m_ub == 0) problem.a_ub.resize(0, n);
  if (m_eq == 0) problem.a_eq.resize(0, n);
  const double scale = internal::coefficient_scale(problem);

  // Slack LP: min t s.t. A_ub x - t <= b_ub, A_eq x = b_eq, x in simplex.
  LinearProgram lp;
  lp.objective = Eigen::VectorXd::Zero(n + 1);
  lp.objective(n) = m_ub > 0 ? 1.0 : 0.0;
  lp.a_ub = Eigen::MatrixXd::Zero(m_ub, n + 1);
  if (m_ub > 0) {
    lp.a_ub.leftCols(n) = problem.a_ub;
    lp.a_ub.col(n).setConstant(-1.0);
  }
  lp.b_ub = problem.b_ub;
  internal::with_simplex(problem.a_eq, problem.b_eq, n, 1, lp.a_eq, lp.b_eq);
  lp.free_variables.assign(n + 1, false);
  lp.free_variables[n] = true;
  if (m_ub == 0) {
    // t is absent from every row; pin it to keep the LP bounded.
    lp.a_eq.conservativeResize(lp.a_eq.rows() + 1, Eigen::NoChange);
    lp.a_eq.row(lp.a_eq.rows() - 1).setZero();
    lp.a_eq(lp.a_eq.rows() - 1, n) = 1.0;
    lp.b_eq.conservativeResize(lp.b_eq.size() + 1);
    lp.b_eq(lp.b_eq.size() - 1) = 0.0;
  }
  const LpResult slack = solve_lp(lp);
  if (slack.status == LpStatus::kInfeasible) {
    throw InfeasibleError("equality constraints have no solution in the simplex");
  }
  if (slack.status != LpStatus::kOptimal) {
    throw Error("feasibility linear program failed: " + to_string(slack.status));
  }
  const double t_star = m_ub > 0 ? slack.x(n) : 0.0;
  const double feas_limit =
      std::min(options.feasibility_tol * scale, 0.5 * options.dual.constraint_tol);
  if (t_star > feas_limit) {
    throw InfeasibleError("constraints are infeasible: smallest achievable violation " +
                          std::to_string(t_star));
  }
  PolytopePoint out;
  DualOptions dual_options = options.dual;
  if (t_star > 0.0) {
    out.relaxation = t_star;
    problem.b_ub.array() += t_star;
    dual_options.constraint_tol -= t_star;
  }

  std::vector<Eigen::Index> support;
  const bool interior = m_eq == 0 && t_star < -1e-10 * scale;
  if (problem.potential == Potential::kSquaredNorm || interior) {
    support.resize(n);
    for (Eigen::Index a = 0; a < n; ++a) support[a] = a;
  } else {
    support = internal::maximal_support(problem, options.support_tol);
  }
  const auto k = static_cast<Eigen::Index>(support.size());

  DualProblem dual;
  dual.potential = problem.potential;
  dual.rows.resize(m_ub + m_eq, k);
  dual.rhs.resize(m_ub + m_eq);
  dual.num_inequalities = m_ub;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (m_ub > 0) dual.rows.block(0, i, m_ub, 1) = problem.a_ub.col(support[i]);
    if (m_eq > 0) dual.rows.block(m_ub, i, m_eq, 1) = problem.a_eq.col(support[i]);
  }
  if (m_ub > 0) dual.rhs.head(m_ub) = problem.b_ub;
  if (m_eq > 0) dual.rhs.tail(m_eq) = problem.b_eq;
  if (problem.weights.size() > 0) {
    dual.weights.resize(k);
    for (Eigen::Index i = 0; i < k; ++i) dual.weights(i) = problem.weights(support[i]);
  }
  const DualResult res = solve_dual(dual, dual_options);

  out.x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < k; ++i) out.x(support[i]) = res.primal(i);
  out.ub_multipliers = res.multipliers.head(m_ub);
  out.eq_multipliers = res.multipliers.tail(m_eq);
  out.iterations = res.iterations;
  out.converged = res.converged;
  return out;
}

}  // namespace eqrate

#endif  // EQRATE_POLYTOPE_HPP_
