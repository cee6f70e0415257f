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

#ifndef EQRATE_GIBBS_DUAL_HPP_
#define EQRATE_GIBBS_DUAL_HPP_

// Dual solver for separable strictly convex selection objectives over a
// polytope inside the probability simplex:
//
//   minimize    sum_a phi(sigma_a) / w_a
//   subject to  R_ub sigma <= b_ub,  R_eq sigma = b_eq,  1^T sigma = 1,
//
// with phi(x) = x ln x (maximum entropy) or phi(x) = x^2 (maximum Gini).
// Given multipliers y (y >= 0 on inequality rows) the primal minimizer is
// available in closed form,
//
//   entropy: sigma_a = exp(-1 - w_a (k_a + mu))
//   gini:    sigma_a = (w_a / 2) max(0, -(k_a + mu)),     k = R^T y,
//
// where mu normalizes sigma onto the simplex. The remaining dual in y is
// smooth and convex with gradient b - R sigma; it is minimized by a
// projected Newton method with an Armijo search along the projection arc.
// For the entropy objective with unit weights this is exactly
// log Z(y) + y.b with sigma the Gibbs distribution exp(-R^T y) / Z.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "eqrate/errors.hpp"

namespace eqrate {

enum class Potential { kNegEntropy, kSquaredNorm };

struct DualProblem {
  Eigen::MatrixXd rows;
  Eigen::VectorXd rhs;
  // rows [0, num_inequalities) are <=, the rest are equalities.
  Eigen::Index num_inequalities = 0;
  // Empty means unit weights.
  Eigen::VectorXd weights;
  Potential potential = Potential::kNegEntropy;
};

struct DualOptions {
  double constraint_tol = 1e-8;
  double duality_gap_tol = 1e-8;
  int max_iterations = 100000;
};

struct DualResult {
  Eigen::VectorXd primal;
  // One multiplier per row, in the units of the rows as given.
  Eigen::VectorXd multipliers;
  int iterations = 0;
  bool converged = false;
  double max_violation = 0.0;
  double max_complementarity = 0.0;
};

namespace internal {

class SeparableDual {
 public:
  SeparableDual(const DualProblem& problem) : p_(problem) {
    const Eigen::Index n = p_.rows.cols();
    if (p_.weights.size() == 0) p_.weights = Eigen::VectorXd::Ones(n);
    unit_weights_ = (p_.weights.array() == 1.0).all();
  }

  struct Point {
    Eigen::VectorXd y;
    Eigen::VectorXd sigma;
    Eigen::VectorXd gradient;
    double mu = 0.0;
    double value = 0.0;
  };

  Point evaluate(const Eigen::VectorXd& y) const {
    Point pt;
    pt.y = y;
    const Eigen::VectorXd k = p_.rows.transpose() * y;
    if (p_.potential == Potential::kNegEntropy) {
      entropy_primal(k, pt);
    } else {
      gini_primal(k, pt);
    }
    pt.value += y.dot(p_.rhs) + pt.mu;
    pt.gradient = p_.rhs - p_.rows * pt.sigma;
    return pt;
  }

  // Generalized Hessian of the dual after eliminating mu.
  Eigen::MatrixXd hessian(const Point& pt) const {
    Eigen::VectorXd d(pt.sigma.size());
    for (Eigen::Index a = 0; a < d.size(); ++a) {
      if (p_.potential == Potential::kNegEntropy) {
        d(a) = p_.weights(a) * pt.sigma(a);
      } else {
        d(a) = pt.sigma(a) > 0.0 ? 0.5 * p_.weights(a) : 0.0;
      }
    }
    const double total = d.sum();
    Eigen::MatrixXd scaled = p_.rows * d.asDiagonal();
    Eigen::MatrixXd h = scaled * p_.rows.transpose();
    if (total > 0.0) {
      const Eigen::VectorXd rd = p_.rows * d;
      h.noalias() -= (rd * rd.transpose()) / total;
    }
    return h;
  }

 private:
  void entropy_primal(const Eigen::VectorXd& k, Point& pt) const {
    const Eigen::Index n = k.size();
    if (unit_weights_) {
      const double top = (-k).maxCoeff();
      pt.sigma = (-k.array() - top).exp();
      const double z = pt.sigma.sum();
      pt.sigma /= z;
      pt.mu = top + std::log(z) - 1.0;
      pt.value = 1.0;
      return;
    }
    // phi(mu) = log sum exp(-1 - w (k + mu)) is convex and decreasing; Newton
    // started where phi >= 0 increases monotonically to the root.
    double mu = -std::numeric_limits<double>::infinity();
    for (Eigen::Index a = 0; a < n; ++a) mu = std::max(mu, -1.0 / p_.weights(a) - k(a));
    Eigen::VectorXd e(n);
    for (int it = 0; it < 200; ++it) {
      e = -1.0 - (p_.weights.array() * (k.array() + mu));
      const double top = e.maxCoeff();
      const Eigen::ArrayXd ex = (e.array() - top).exp();
      const double s = ex.sum();
      const double phi = top + std::log(s);
      const double slope = -(p_.weights.array() * ex).sum() / s;
      if (std::abs(phi) < 1e-15) break;
      mu -= phi / slope;
    }
    e = -1.0 - (p_.weights.array() * (k.array() + mu));
    pt.sigma = e.array().exp();
    pt.sigma /= pt.sigma.sum();
    pt.mu = mu;
    pt.value = (pt.sigma.array() / p_.weights.array()).sum();
  }

  void gini_primal(const Eigen::VectorXd& k, Point& pt) const {
    const Eigen::Index n = k.size();
    // sigma_a = (w_a / 2) max(0, t_a - mu) with t = -k; find mu with
    // sum sigma = 1 by scanning breakpoints in decreasing order.
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index a, Eigen::Index b) { return -k(a) > -k(b); });
    double wt = 0.0;
    double w = 0.0;
    double mu = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::Index a = order[i];
      wt += 0.5 * p_.weights(a) * -k(a);
      w += 0.5 * p_.weights(a);
      mu = (wt - 1.0) / w;
      const double next = i + 1 < n ? -k(order[i + 1]) : -std::numeric_limits<double>::infinity();
      if (mu >= next) break;
    }
    pt.sigma.resize(n);
    double value = 0.0;
    for (Eigen::Index a = 0; a < n; ++a) {
      const double gap = std::max(0.0, -k(a) - mu);
      pt.sigma(a) = 0.5 * p_.weights(a) * gap;
      value += 0.25 * p_.weights(a) * gap * gap;
    }
    pt.mu = mu;
    pt.value = value;
  }

  DualProblem p_;
  bool unit_weights_ = true;
};

}  // namespace internal

inline DualResult solve_dual(const DualProblem& problem,
                             const DualOptions& options = {}) {
  const Eigen::Index m = problem.rows.rows();
  const Eigen::Index n = problem.rows.cols();
  if (n == 0) throw InvalidArgument("dual problem has no primal variables");
  if (problem.rhs.size() != m || problem.num_inequalities > m ||
      (problem.weights.size() != 0 && problem.weights.size() != n)) {
    throw InvalidArgument("dual problem dimensions are inconsistent");
  }
  if (problem.weights.size() != 0 && (problem.weights.array() <= 0.0).any()) {
    throw InvalidArgument("objective weights must be positive");
  }

  // Normalize every row to unit max-norm; drop rows that vanish.
  std::vector<Eigen::Index> kept;
  std::vector<double> row_scale;
  for (Eigen::Index r = 0; r < m; ++r) {
    const double s = problem.rows.row(r).cwiseAbs().maxCoeff();
    if (s > 0.0) {
      kept.push_back(r);
      row_scale.push_back(s);
    }
  }
  const auto mk = static_cast<Eigen::Index>(kept.size());
  DualProblem scaled;
  scaled.rows.resize(mk, n);
  scaled.rhs.resize(mk);
  scaled.weights = problem.weights;
  scaled.potential = problem.potential;
  scaled.num_inequalities = 0;
  for (Eigen::Index i = 0; i < mk; ++i) {
    scaled.rows.row(i) = problem.rows.row(kept[i]) / row_scale[i];
    scaled.rhs(i) = problem.rhs(kept[i]) / row_scale[i];
    if (kept[i] < problem.num_inequalities) ++scaled.num_inequalities;
  }
  const Eigen::Index n_ineq = scaled.num_inequalities;
  const internal::SeparableDual dual(scaled);

  auto project = [&](Eigen::VectorXd y) {
    for (Eigen::Index i = 0; i < n_ineq; ++i) y(i) = std::max(y(i), 0.0);
    return y;
  };

  // KKT residuals in the caller's units.
  auto residuals = [&](const internal::SeparableDual::Point& pt, double& viol,
                       double& comp) {
    viol = 0.0;
    comp = 0.0;
    for (Eigen::Index i = 0; i < mk; ++i) {
      const double slack = pt.gradient(i) * row_scale[i];
      if (i < n_ineq) {
        viol = std::max(viol, -slack);
        comp = std::max(comp, std::abs(pt.y(i) * pt.gradient(i)));
      } else {
        viol = std::max(viol, std::abs(slack));
      }
    }
  };

  DualResult result;
  internal::SeparableDual::Point pt = dual.evaluate(Eigen::VectorXd::Zero(mk));
  // Once converged, a few more Newton steps are taken while they shrink the
  // KKT residual. They are nearly free and sharpen tiny probabilities, which
  // conditional ratings divide by.
  constexpr int kPolishSteps = 4;
  int polish_left = -1;
  internal::SeparableDual::Point best;
  double best_residual = std::numeric_limits<double>::infinity();
  int stalls = 0;
  for (int it = 0;; ++it) {
    double viol = 0.0;
    double comp = 0.0;
    residuals(pt, viol, comp);
    const double residual = std::max(viol, comp);
    if (polish_left >= 0) {
      if (!(residual < best_residual)) break;
      best = pt;
      best_residual = residual;
      result.iterations = it;
      result.max_violation = viol;
      result.max_complementarity = comp;
      if (polish_left-- == 0) break;
    } else {
      result.iterations = it;
      result.max_violation = viol;
      result.max_complementarity = comp;
      if (viol <= options.constraint_tol && comp <= options.duality_gap_tol) {
        result.converged = true;
        best = pt;
        best_residual = residual;
        polish_left = kPolishSteps;
      }
    }
    if (mk == 0 || it >= options.max_iterations) break;

    const Eigen::VectorXd& g = pt.gradient;
    const Eigen::VectorXd pg = pt.y - project(pt.y - g);
    const double active_eps = std::min(1e-6, pg.cwiseAbs().maxCoeff());
    std::vector<Eigen::Index> free_idx;
    std::vector<bool> is_free(mk, true);
    for (Eigen::Index i = 0; i < mk; ++i) {
      if (i < n_ineq && pt.y(i) <= active_eps && g(i) > 0.0) {
        is_free[i] = false;
      } else {
        free_idx.push_back(i);
      }
    }
    const Eigen::MatrixXd h = dual.hessian(pt);
    Eigen::VectorXd dir = Eigen::VectorXd::Zero(mk);
    const auto nf = static_cast<Eigen::Index>(free_idx.size());
    if (nf > 0) {
      Eigen::MatrixXd hf(nf, nf);
      Eigen::VectorXd gf(nf);
      for (Eigen::Index i = 0; i < nf; ++i) {
        gf(i) = g(free_idx[i]);
        for (Eigen::Index j = 0; j < nf; ++j) hf(i, j) = h(free_idx[i], free_idx[j]);
      }
      double reg = 1e-12 * std::max(1.0, hf.diagonal().cwiseAbs().maxCoeff());
      Eigen::VectorXd df;
      for (int attempt = 0; attempt < 30; ++attempt) {
        Eigen::MatrixXd hr = hf;
        hr.diagonal().array() += reg;
        Eigen::LLT<Eigen::MatrixXd> llt(hr);
        if (llt.info() == Eigen::Success) {
          df = llt.solve(-gf);
          if (df.allFinite()) break;
        }
        reg *= 100.0;
      }
      if (df.size() != nf || !df.allFinite()) df = -gf;
      for (Eigen::Index i = 0; i < nf; ++i) dir(free_idx[i]) = df(i);
    }
    for (Eigen::Index i = 0; i < mk; ++i) {
      if (!is_free[i]) dir(i) = -g(i) / std::max(h(i, i), 1e-12);
    }

    // Armijo search along the projection arc.
    bool accepted = false;
    double alpha = 1.0;
    for (int ls = 0; ls < 60; ++ls) {
      const Eigen::VectorXd y_new = project(pt.y + alpha * dir);
      internal::SeparableDual::Point cand = dual.evaluate(y_new);
      const double decrease = g.dot(y_new - pt.y);
      if (std::isfinite(cand.value) &&
          cand.value <= pt.value + 1e-4 * decrease + 1e-15 * std::abs(pt.value)) {
        pt = std::move(cand);
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      // Round-off has swamped the dual value; accept a full projected
      // gradient step if it shrinks the KKT residual, otherwise give up.
      const Eigen::VectorXd y_new = project(pt.y + dir);
      internal::SeparableDual::Point cand = dual.evaluate(y_new);
      double v2 = 0.0;
      double c2 = 0.0;
      residuals(cand, v2, c2);
      if (std::max(v2, c2) < std::max(viol, comp) && ++stalls < 50) {
        pt = std::move(cand);
      } else {
        break;
      }
    }
  }

  if (result.converged) pt = std::move(best);
  result.primal = pt.sigma;
  result.multipliers = Eigen::VectorXd::Zero(m);
  for (Eigen::Index i = 0; i < mk; ++i) {
    result.multipliers(kept[i]) = pt.y(i) / row_scale[i];
  }
  return result;
}

}  // namespace eqrate

#endif  // EQRATE_GIBBS_DUAL_HPP_
