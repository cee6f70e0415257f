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

#ifndef EQRATE_SOLVERS_HPP_
#define EQRATE_SOLVERS_HPP_

// Equilibrium selection over the epsilon-(C)CE polytope.

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "eqrate/constraints.hpp"
#include "eqrate/game.hpp"
#include "eqrate/linprog.hpp"
#include "eqrate/polytope.hpp"

namespace eqrate {

enum class Selection { kMaxEntropy, kMaxGini, kMaxWelfare };

inline std::string to_string(Selection s) {
  switch (s) {
    case Selection::kMaxEntropy: return "max-entropy";
    case Selection::kMaxGini: return "max-gini";
    case Selection::kMaxWelfare: return "max-welfare";
  }
  return "unknown";
}

// Epsilon given directly in payoff units. A single value applies to every
// player.
struct AbsoluteEpsilon {
  EpsilonVector epsilon;
};

// epsilon_p = rho * epsilon_uniform_p.
struct NormalizedEpsilon {
  double rho = 1.0;
};

// epsilon_p = epsilon_min + max(delta_abs, delta_rel * |epsilon_min|).
struct MinPlusEpsilon {
  double delta_abs = 1e-6;
  double delta_rel = 1e-4;
};

using EpsilonMode = std::variant<AbsoluteEpsilon, NormalizedEpsilon, MinPlusEpsilon>;

struct Tolerances {
  double constraint_tol = 1e-8;
  double duality_gap_tol = 1e-8;
  int max_iterations = 100000;
};

struct SolveConfig {
  Concept concept_kind = Concept::kCCE;
  Selection selection = Selection::kMaxEntropy;
  EpsilonMode epsilon_mode = MinPlusEpsilon{};
  // Per-joint objective weights w(a) > 0; the entropy term of joint a is
  // divided by w(a).
  std::optional<std::vector<double>> weights;
  Tolerances tolerances;
};

struct EquilibriumSolution {
  JointDistribution dist;
  EpsilonVector epsilon;
  EpsilonVector achieved_violation;
  double objective_value = 0.0;
  // One entry per row of build_constraints(game, concept); zero on CE
  // self-deviation rows.
  std::vector<double> dual_variables;
  int iterations = 0;
  bool converged = false;
};

inline EpsilonVector resolve_epsilon(const NormalFormGame& game, Concept concept_kind,
                                     const EpsilonMode& mode) {
  const auto n = static_cast<std::size_t>(game.num_players());
  if (const auto* abs_mode = std::get_if<AbsoluteEpsilon>(&mode)) {
    const EpsilonVector& eps = abs_mode->epsilon;
    if (eps.size() == 1) return EpsilonVector(n, eps[0]);
    if (eps.size() != n) {
      throw InvalidArgument("expected 1 or " + std::to_string(n) +
                            " epsilon values, got " + std::to_string(eps.size()));
    }
    for (double e : eps) {
      if (!std::isfinite(e)) throw InvalidArgument("epsilon must be finite");
    }
    return eps;
  }
  if (const auto* norm = std::get_if<NormalizedEpsilon>(&mode)) {
    if (!std::isfinite(norm->rho)) throw InvalidArgument("rho must be finite");
    EpsilonVector eps = epsilon_uniform(game, concept_kind);
    for (double& e : eps) e *= norm->rho;
    return eps;
  }
  const auto& plus = std::get<MinPlusEpsilon>(mode);
  if (!(plus.delta_abs >= 0.0) || !(plus.delta_rel >= 0.0)) {
    throw InvalidArgument("delta offsets must be nonnegative");
  }
  const double eps_min = epsilon_min(game, concept_kind).epsilon.front();
  const double delta = std::max(plus.delta_abs, plus.delta_rel * std::abs(eps_min));
  if (!(delta > 0.0)) throw InvalidArgument("eps-min-plus needs a positive delta");
  return EpsilonVector(n, eps_min + delta);
}

namespace internal {

inline Eigen::VectorXd checked_weights(const NormalFormGame& game,
                                       const std::optional<std::vector<double>>& w) {
  if (!w) return {};
  if (w->size() != game.num_joints()) {
    throw ShapeError("weights have " + std::to_string(w->size()) +
                     " entries, game has " + std::to_string(game.num_joints()) +
                     " joints");
  }
  Eigen::VectorXd out(w->size());
  for (std::size_t i = 0; i < w->size(); ++i) {
    if (!std::isfinite((*w)[i]) || !((*w)[i] > 0.0)) {
      throw InvalidArgument("weights must be finite and positive");
    }
    out(static_cast<Eigen::Index>(i)) = (*w)[i];
  }
  return out;
}

inline PolytopeOptions polytope_options(const Tolerances& tol) {
  if (!(tol.constraint_tol > 0.0)) throw InvalidArgument("constraint_tol must be positive");
  PolytopeOptions opt;
  opt.dual.constraint_tol = tol.constraint_tol;
  opt.dual.duality_gap_tol = tol.duality_gap_tol;
  opt.dual.max_iterations = tol.max_iterations;
  return opt;
}

struct EquilibriumPolytope {
  DeviationConstraints constraints;
  std::vector<Eigen::Index> rows;
  PolytopeProblem problem;
};

inline EquilibriumPolytope equilibrium_polytope(const NormalFormGame& game,
                                                Concept concept_kind,
                                                const EpsilonVector& epsilon) {
  if (epsilon.size() != static_cast<std::size_t>(game.num_players())) {
    throw InvalidArgument("epsilon needs one value per player");
  }
  EquilibriumPolytope out{build_constraints(game, concept_kind), {}, {}};
  out.rows = out.constraints.active_rows();
  const auto m = static_cast<Eigen::Index>(out.rows.size());
  out.problem.a_ub.resize(m, out.constraints.matrix.cols());
  out.problem.b_ub.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    out.problem.a_ub.row(i) = out.constraints.matrix.row(out.rows[i]);
    out.problem.b_ub(i) = epsilon[out.constraints.rows[out.rows[i]].player];
  }
  return out;
}

inline EquilibriumSolution finish(const NormalFormGame& game,
                                  const EquilibriumPolytope& poly,
                                  const EpsilonVector& epsilon,
                                  const PolytopePoint& point) {
  std::vector<double> probs(point.x.data(), point.x.data() + point.x.size());
  JointDistribution dist = JointDistribution::from_unnormalized(game.shape(), probs);
  EquilibriumSolution sol{dist, epsilon, max_violation(poly.constraints, dist)};
  sol.dual_variables.assign(poly.constraints.num_rows(), 0.0);
  for (std::size_t i = 0; i < poly.rows.size(); ++i) {
    sol.dual_variables[poly.rows[i]] =
        std::max(0.0, point.ub_multipliers(static_cast<Eigen::Index>(i)));
  }
  sol.iterations = point.iterations;
  sol.converged = point.converged;
  return sol;
}

inline double weighted_entropy(const JointDistribution& dist, const Eigen::VectorXd& w) {
  double h = 0.0;
  for (std::size_t j = 0; j < dist.size(); ++j) {
    const double v = dist[j];
    if (v > 0.0) h -= v * std::log(v) / (w.size() ? w(static_cast<Eigen::Index>(j)) : 1.0);
  }
  return h;
}

inline double welfare(const NormalFormGame& game, const JointDistribution& dist) {
  double total = 0.0;
  for (int p = 0; p < game.num_players(); ++p) total += expected_payoff(game, dist, p);
  return total;
}

}  // namespace internal

inline EquilibriumSolution solve_max_entropy(const NormalFormGame& game,
                                             Concept concept_kind,
                                             const EpsilonVector& epsilon,
                                             const SolveConfig& config = {}) {
  internal::EquilibriumPolytope poly =
      internal::equilibrium_polytope(game, concept_kind, epsilon);
  poly.problem.weights = internal::checked_weights(game, config.weights);
  poly.problem.potential = Potential::kNegEntropy;
  const PolytopePoint point =
      select_point(poly.problem, internal::polytope_options(config.tolerances));
  EquilibriumSolution sol = internal::finish(game, poly, epsilon, point);
  sol.objective_value = internal::weighted_entropy(sol.dist, poly.problem.weights);
  return sol;
}

inline EquilibriumSolution solve_max_gini(const NormalFormGame& game,
                                          Concept concept_kind,
                                          const EpsilonVector& epsilon,
                                          const SolveConfig& config = {}) {
  internal::EquilibriumPolytope poly =
      internal::equilibrium_polytope(game, concept_kind, epsilon);
  poly.problem.weights = internal::checked_weights(game, config.weights);
  poly.problem.potential = Potential::kSquaredNorm;
  const PolytopePoint point =
      select_point(poly.problem, internal::polytope_options(config.tolerances));
  EquilibriumSolution sol = internal::finish(game, poly, epsilon, point);
  double sq = 0.0;
  for (std::size_t j = 0; j < sol.dist.size(); ++j) {
    const double w = poly.problem.weights.size()
                         ? poly.problem.weights(static_cast<Eigen::Index>(j))
                         : 1.0;
    sq += sol.dist[j] * sol.dist[j] / w;
  }
  sol.objective_value = 1.0 - sq;
  return sol;
}

// Maximum total welfare; ties on the optimal face are broken by maximum
// entropy.
inline EquilibriumSolution solve_max_welfare(const NormalFormGame& game,
                                             Concept concept_kind,
                                             const EpsilonVector& epsilon,
                                             const SolveConfig& config = {}) {
  internal::EquilibriumPolytope poly =
      internal::equilibrium_polytope(game, concept_kind, epsilon);
  const auto joints = static_cast<Eigen::Index>(game.num_joints());
  Eigen::VectorXd welfare = Eigen::VectorXd::Zero(joints);
  for (int p = 0; p < game.num_players(); ++p) {
    for (Eigen::Index j = 0; j < joints; ++j) welfare(j) += game.payoff(p, j);
  }
  LinearProgram lp;
  lp.objective = -welfare;
  lp.a_ub = poly.problem.a_ub;
  lp.b_ub = poly.problem.b_ub;
  lp.a_eq = Eigen::MatrixXd::Ones(1, joints);
  lp.b_eq = Eigen::VectorXd::Ones(1);
  const LpResult res = solve_lp(lp);
  if (res.status == LpStatus::kInfeasible) {
    throw InfeasibleError("no distribution satisfies the requested epsilon");
  }
  if (res.status != LpStatus::kOptimal) {
    throw Error("welfare linear program failed: " + to_string(res.status));
  }
  const double best = -res.objective;
  const double slack = 1e-12 * std::max(1.0, welfare.cwiseAbs().maxCoeff());

  PolytopeProblem face = poly.problem;
  face.a_ub.conservativeResize(face.a_ub.rows() + 1, Eigen::NoChange);
  face.a_ub.row(face.a_ub.rows() - 1) = -welfare.transpose();
  face.b_ub.conservativeResize(face.b_ub.size() + 1);
  face.b_ub(face.b_ub.size() - 1) = -best + slack;
  face.weights = internal::checked_weights(game, config.weights);
  face.potential = Potential::kNegEntropy;
  const PolytopePoint point =
      select_point(face, internal::polytope_options(config.tolerances));
  PolytopePoint trimmed = point;
  trimmed.ub_multipliers = point.ub_multipliers.head(poly.problem.a_ub.rows());
  EquilibriumSolution sol = internal::finish(game, poly, epsilon, trimmed);
  sol.objective_value = internal::welfare(game, sol.dist);
  return sol;
}

namespace internal {

// Value of the row player's max-min problem for payoff matrix m (rows are
// the player's own strategies).
inline double security_value(const Eigen::MatrixXd& m) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  LinearProgram lp;
  lp.objective = Eigen::VectorXd::Zero(rows + 1);
  lp.objective(rows) = -1.0;
  lp.a_ub = Eigen::MatrixXd::Zero(cols, rows + 1);
  lp.a_ub.leftCols(rows) = -m.transpose();
  lp.a_ub.col(rows).setOnes();
  lp.b_ub = Eigen::VectorXd::Zero(cols);
  lp.a_eq = Eigen::MatrixXd::Zero(1, rows + 1);
  lp.a_eq.leftCols(rows).setOnes();
  lp.b_eq = Eigen::VectorXd::Ones(1);
  lp.free_variables.assign(rows + 1, false);
  lp.free_variables[rows] = true;
  const LpResult res = solve_lp(lp);
  if (res.status != LpStatus::kOptimal) {
    throw Error("game value linear program failed: " + to_string(res.status));
  }
  return res.x(rows);
}

}  // namespace internal

inline bool is_constant_sum(const NormalFormGame& game, double tol = 1e-9) {
  if (game.num_players() != 2) return false;
  const double first = game.payoff(0, std::size_t{0}) + game.payoff(1, std::size_t{0});
  for (std::size_t j = 0; j < game.num_joints(); ++j) {
    if (std::abs(game.payoff(0, j) + game.payoff(1, j) - first) >
        tol * game.payoff_scale()) {
      return false;
    }
  }
  return true;
}

// Maximum-entropy Nash equilibrium of a two-player constant-sum game: each
// marginal is the entropy-maximal optimal security strategy.
inline EquilibriumSolution solve_mene_2p0s(const NormalFormGame& game,
                                           const Tolerances& tolerances = {}) {
  if (game.num_players() != 2) {
    throw InvalidArgument("MENE solver needs a two-player game");
  }
  if (!is_constant_sum(game)) {
    throw InvalidArgument("MENE solver needs a constant-sum game");
  }
  const auto r = static_cast<Eigen::Index>(game.num_strategies(0));
  const auto c = static_cast<Eigen::Index>(game.num_strategies(1));
  // own[p] has player p's strategies as rows.
  Eigen::MatrixXd own[2] = {Eigen::MatrixXd(r, c), Eigen::MatrixXd(c, r)};
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) {
      const auto joint = static_cast<std::size_t>(i * c + j);
      own[0](i, j) = game.payoff(0, joint);
      own[1](j, i) = game.payoff(1, joint);
    }
  }
  const PolytopeOptions options = internal::polytope_options(tolerances);
  std::vector<std::vector<double>> marginals;
  std::vector<double> duals;
  int iterations = 0;
  bool converged = true;
  for (int p = 0; p < 2; ++p) {
    const double v = internal::security_value(own[p]);
    PolytopeProblem problem;
    problem.a_ub = -own[p].transpose();
    problem.b_ub = Eigen::VectorXd::Constant(own[p].cols(), -v);
    problem.potential = Potential::kNegEntropy;
    const PolytopePoint point = select_point(problem, options);
    marginals.emplace_back(point.x.data(), point.x.data() + point.x.size());
    double total = 0.0;
    for (double& x : marginals.back()) total += (x = std::max(x, 0.0));
    for (double& x : marginals.back()) x /= total;
    for (Eigen::Index i = 0; i < point.ub_multipliers.size(); ++i) {
      duals.push_back(std::max(0.0, point.ub_multipliers(i)));
    }
    iterations += point.iterations;
    converged = converged && point.converged;
  }
  JointDistribution dist = outer_product(marginals);
  const DeviationConstraints ce = build_constraints(game, Concept::kCE);
  EquilibriumSolution sol{dist, EpsilonVector(2, 0.0), max_violation(ce, dist)};
  sol.objective_value = dist.entropy();
  sol.dual_variables = std::move(duals);
  sol.iterations = iterations;
  sol.converged = converged;
  return sol;
}

inline EquilibriumSolution solve(const NormalFormGame& game, const SolveConfig& config) {
  if (config.concept_kind == Concept::kMENE) {
    return solve_mene_2p0s(game, config.tolerances);
  }
  const EpsilonVector eps = resolve_epsilon(game, config.concept_kind, config.epsilon_mode);
  switch (config.selection) {
    case Selection::kMaxEntropy:
      return solve_max_entropy(game, config.concept_kind, eps, config);
    case Selection::kMaxGini:
      return solve_max_gini(game, config.concept_kind, eps, config);
    case Selection::kMaxWelfare:
      return solve_max_welfare(game, config.concept_kind, eps, config);
  }
  throw InvalidArgument("unknown selection");
}

}  // namespace eqrate

#endif  // EQRATE_SOLVERS_HPP_
