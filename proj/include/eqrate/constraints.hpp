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

#ifndef EQRATE_CONSTRAINTS_HPP_
#define EQRATE_CONSTRAINTS_HPP_

// Deviation-gain constraints in standard form, A sigma <= epsilon.
//
// CE rows are indexed (p, a'_p, a_p) -> offset_p + a'_p * |A_p| + a_p and hold
// G_p(a'_p, a_{-p}) - G_p(a_p, a_{-p}) on joints whose p-coordinate is a_p.
// Rows with a'_p == a_p are kept as explicit zero rows so the index is a pure
// function of (p, a'_p, a_p); they are not constraints and are skipped by
// every diagnostic and solver.
//
// CCE rows are indexed (p, a'_p) -> offset_p + a'_p and hold
// G_p(a'_p, a_{-p}) - G_p(a) on every joint.

#include <Eigen/Dense>

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "eqrate/game.hpp"
#include "eqrate/linprog.hpp"

namespace eqrate {

// kMENE shares the CE deviation gains: a factorized distribution is an
// epsilon-NE iff it satisfies the CE constraints.
enum class Concept { kCE, kCCE, kMENE };

inline std::string to_string(Concept c) {
  switch (c) {
    case Concept::kCE: return "ce";
    case Concept::kCCE: return "cce";
    case Concept::kMENE: return "mene-2p0s";
  }
  return "unknown";
}

struct ConstraintRow {
  int player = 0;
  std::size_t deviate_to = 0;
  // Only set for CE rows.
  std::optional<std::size_t> deviate_from;

  bool is_self_deviation() const {
    return deviate_from.has_value() && *deviate_from == deviate_to;
  }
};

struct DeviationConstraints {
  Concept kind = Concept::kCCE;
  Eigen::MatrixXd matrix;
  std::vector<ConstraintRow> rows;
  // rows of player p are [player_offset[p], player_offset[p + 1]).
  std::vector<Eigen::Index> player_offset;
  Shape num_strategies;

  Eigen::Index num_rows() const { return matrix.rows(); }

  Eigen::Index row_index(int player, std::size_t deviate_to,
                         std::optional<std::size_t> deviate_from = {}) const {
    if (kind == Concept::kCCE) return player_offset[player] + deviate_to;
    return player_offset[player] +
           deviate_to * num_strategies[player] + deviate_from.value();
  }

  // The constraint rows that are real constraints, i.e. everything except CE
  // self-deviations.
  std::vector<Eigen::Index> active_rows() const {
    std::vector<Eigen::Index> out;
    for (Eigen::Index r = 0; r < num_rows(); ++r) {
      if (!rows[r].is_self_deviation()) out.push_back(r);
    }
    return out;
  }
};

inline Concept constraint_kind(Concept c) {
  return c == Concept::kCCE ? Concept::kCCE : Concept::kCE;
}

inline DeviationConstraints build_constraints(const NormalFormGame& game,
                                              Concept concept_kind) {
  const Concept kind = constraint_kind(concept_kind);
  const Layout& layout = game.layout();
  const int n = game.num_players();
  DeviationConstraints out;
  out.kind = kind;
  out.num_strategies = game.shape();
  out.player_offset.push_back(0);
  for (int p = 0; p < n; ++p) {
    const auto s = static_cast<Eigen::Index>(game.num_strategies(p));
    out.player_offset.push_back(out.player_offset.back() +
                                (kind == Concept::kCE ? s * s : s));
  }
  out.matrix = Eigen::MatrixXd::Zero(out.player_offset.back(), layout.size());
  out.rows.resize(out.player_offset.back());
  for (int p = 0; p < n; ++p) {
    const std::size_t s = game.num_strategies(p);
    for (std::size_t to = 0; to < s; ++to) {
      if (kind == Concept::kCCE) {
        const Eigen::Index r = out.player_offset[p] + to;
        out.rows[r] = {p, to, std::nullopt};
        for (std::size_t j = 0; j < layout.size(); ++j) {
          out.matrix(r, j) = game.payoff(p, layout.with_strategy(j, p, to)) -
                             game.payoff(p, j);
        }
        continue;
      }
      for (std::size_t from = 0; from < s; ++from) {
        const Eigen::Index r = out.player_offset[p] + to * s + from;
        out.rows[r] = {p, to, from};
        if (to == from) continue;
        for (std::size_t j = 0; j < layout.size(); ++j) {
          if (layout.strategy_of(j, p) != from) continue;
          out.matrix(r, j) = game.payoff(p, layout.with_strategy(j, p, to)) -
                             game.payoff(p, j);
        }
      }
    }
  }
  return out;
}

inline Eigen::Map<const Eigen::VectorXd> as_vector(const JointDistribution& dist) {
  return {dist.probs().data(), static_cast<Eigen::Index>(dist.size())};
}

// Largest deviation gain of each player under `dist`. A distribution is an
// epsilon-equilibrium iff the result is <= epsilon component-wise. A CE
// player with a single strategy has no deviations and reports 0.
inline EpsilonVector max_violation(const DeviationConstraints& constraints,
                                   const JointDistribution& dist) {
  if (constraints.matrix.cols() != static_cast<Eigen::Index>(dist.size())) {
    throw ShapeError("distribution does not match the constraint matrix");
  }
  const Eigen::VectorXd gains = constraints.matrix * as_vector(dist);
  const int n = static_cast<int>(constraints.player_offset.size()) - 1;
  EpsilonVector out(n, -std::numeric_limits<double>::infinity());
  for (Eigen::Index r = 0; r < gains.size(); ++r) {
    if (constraints.rows[r].is_self_deviation()) continue;
    double& v = out[constraints.rows[r].player];
    v = std::max(v, gains(r));
  }
  for (double& v : out) {
    if (v == -std::numeric_limits<double>::infinity()) v = 0.0;
  }
  return out;
}

inline EpsilonVector max_violation(const NormalFormGame& game,
                                   const JointDistribution& dist,
                                   Concept concept_kind) {
  check_same_shape(game, dist);
  return max_violation(build_constraints(game, concept_kind), dist);
}

// The smallest per-player epsilon for which the uniform joint is feasible,
// straight from the payoff tensor.
inline EpsilonVector epsilon_uniform(const NormalFormGame& game,
                                     Concept concept_kind) {
  const Layout& layout = game.layout();
  const double joints = static_cast<double>(layout.size());
  EpsilonVector out;
  for (int p = 0; p < game.num_players(); ++p) {
    std::vector<double> row_sums(game.num_strategies(p), 0.0);
    double total = 0.0;
    for (std::size_t j = 0; j < layout.size(); ++j) {
      row_sums[layout.strategy_of(j, p)] += game.payoff(p, j);
      total += game.payoff(p, j);
    }
    const double best = *std::max_element(row_sums.begin(), row_sums.end());
    const double worst = *std::min_element(row_sums.begin(), row_sums.end());
    double eps = 0.0;
    if (constraint_kind(concept_kind) == Concept::kCE) {
      eps = (best - worst) / joints;
    } else {
      eps = (static_cast<double>(game.num_strategies(p)) * best - total) / joints;
    }
    out.push_back(std::max(eps, 0.0));
  }
  return out;
}

enum class EpsilonMinMode {
  // One scalar t shared by all players: min t s.t. A_p sigma <= t for all p.
  kShared,
  // Minimize epsilon_0, then epsilon_1 with epsilon_0 held at its optimum,
  // and so on.
  kPerPlayerLexicographic,
};

struct EpsilonMinResult {
  EpsilonVector epsilon;
  JointDistribution witness;
};

namespace internal {

// Active constraint rows plus a zero row for CE players without any
// deviation, so every player contributes at least one row.
struct StackedRows {
  Eigen::MatrixXd matrix;
  std::vector<int> player;
};

inline StackedRows stacked_rows(const DeviationConstraints& constraints) {
  const int n = static_cast<int>(constraints.player_offset.size()) - 1;
  std::vector<Eigen::Index> keep;
  std::vector<int> owner;
  std::vector<bool> has_row(n, false);
  for (Eigen::Index r : constraints.active_rows()) {
    keep.push_back(r);
    owner.push_back(constraints.rows[r].player);
    has_row[constraints.rows[r].player] = true;
  }
  StackedRows out;
  const Eigen::Index extra = std::count(has_row.begin(), has_row.end(), false);
  out.matrix = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(keep.size()) + extra,
                                     constraints.matrix.cols());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    out.matrix.row(i) = constraints.matrix.row(keep[i]);
  }
  out.player = owner;
  for (int p = 0; p < n; ++p) {
    if (!has_row[p]) out.player.push_back(p);
  }
  return out;
}

}  // namespace internal

// Minimum approximation parameter admitting a feasible distribution, plus a
// distribution attaining it. The result can be negative.
inline EpsilonMinResult epsilon_min(const NormalFormGame& game,
                                    Concept concept_kind,
                                    EpsilonMinMode mode = EpsilonMinMode::kShared) {
  const DeviationConstraints constraints = build_constraints(game, concept_kind);
  const internal::StackedRows rows = internal::stacked_rows(constraints);
  const Eigen::Index joints = rows.matrix.cols();
  const Eigen::Index m = rows.matrix.rows();
  const int n = game.num_players();
  // Variables: sigma (joints) followed by one t per player (or a single t).
  const Eigen::Index num_t = mode == EpsilonMinMode::kShared ? 1 : n;
  LinearProgram lp;
  lp.a_ub = Eigen::MatrixXd::Zero(m, joints + num_t);
  lp.a_ub.leftCols(joints) = rows.matrix;
  for (Eigen::Index r = 0; r < m; ++r) {
    lp.a_ub(r, joints + (num_t == 1 ? 0 : rows.player[r])) = -1.0;
  }
  lp.b_ub = Eigen::VectorXd::Zero(m);
  lp.a_eq = Eigen::MatrixXd::Zero(1, joints + num_t);
  lp.a_eq.leftCols(joints).setOnes();
  lp.b_eq = Eigen::VectorXd::Ones(1);
  lp.free_variables.assign(joints + num_t, false);
  for (Eigen::Index i = 0; i < num_t; ++i) lp.free_variables[joints + i] = true;

  auto solve_for = [&](Eigen::Index target) {
    lp.objective = Eigen::VectorXd::Zero(joints + num_t);
    lp.objective(joints + target) = 1.0;
    LpResult res = solve_lp(lp);
    if (res.status != LpStatus::kOptimal) {
      throw Error("epsilon_min linear program failed: " + to_string(res.status));
    }
    return res;
  };

  EpsilonVector eps(n, 0.0);
  LpResult last;
  if (num_t == 1) {
    last = solve_for(0);
    std::fill(eps.begin(), eps.end(), last.x(joints));
  } else {
    const double slack = 1e-10 * game.payoff_scale();
    for (int p = 0; p < n; ++p) {
      last = solve_for(p);
      eps[p] = last.x(joints + p);
      // Hold this player's optimum while minimizing the next one.
      Eigen::MatrixXd a(lp.a_ub.rows() + 1, lp.a_ub.cols());
      a.topRows(lp.a_ub.rows()) = lp.a_ub;
      a.row(lp.a_ub.rows()).setZero();
      a(lp.a_ub.rows(), joints + p) = 1.0;
      Eigen::VectorXd b(lp.b_ub.size() + 1);
      b.head(lp.b_ub.size()) = lp.b_ub;
      b(lp.b_ub.size()) = eps[p] + slack;
      lp.a_ub = std::move(a);
      lp.b_ub = std::move(b);
    }
  }
  std::vector<double> witness(last.x.data(), last.x.data() + joints);
  return {eps, JointDistribution::from_unnormalized(game.shape(), std::move(witness))};
}

}  // namespace eqrate

#endif  // EQRATE_CONSTRAINTS_HPP_
