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

#ifndef EQRATE_RATING_HPP_
#define EQRATE_RATING_HPP_

// Payoff ratings: the expected payoff of a strategy against the rest of the
// joint, conditioned on that strategy being played,
//
//   r_p(a_p) = sum_{a_-p} G_p(a_p, a_-p) sigma(a_-p | a_p).

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "eqrate/constraints.hpp"
#include "eqrate/game.hpp"
#include "eqrate/solvers.hpp"

namespace eqrate {

enum class UndefinedPolicy { kMarkUndefined, kAssignMinPayoff, kPruneAndRerate };

inline std::string to_string(UndefinedPolicy p) {
  switch (p) {
    case UndefinedPolicy::kMarkUndefined: return "mark";
    case UndefinedPolicy::kAssignMinPayoff: return "min-payoff";
    case UndefinedPolicy::kPruneAndRerate: return "prune";
  }
  return "unknown";
}

struct StrategyRating {
  std::string label;
  double rating = 0.0;
  bool defined = true;
  // 0 for strategies rated under the top-level joint; k for strategies rated
  // in the k-th pruned sub-game. Higher tiers rank below lower ones.
  int tier = 0;
  double mass = 0.0;
};

struct RatingReport {
  std::vector<std::vector<StrategyRating>> ratings;
  std::optional<JointDistribution> joint;
  std::vector<double> expected_payoffs;
  std::vector<double> min_payoffs;
  std::vector<double> max_payoffs;
  // Solve metadata; empty when the joint was supplied by the caller.
  std::string concept_name;
  std::string selection_name;
  EpsilonVector epsilon;
  bool converged = true;
};

// Produces a joint for a pruned sub-game under kPruneAndRerate.
using SubgameResolver = std::function<JointDistribution(const NormalFormGame&)>;

namespace internal {

inline NormalFormGame subgame(const NormalFormGame& game,
                              const std::vector<std::vector<std::size_t>>& keep) {
  std::vector<std::vector<std::string>> labels(keep.size());
  for (std::size_t p = 0; p < keep.size(); ++p) {
    for (std::size_t s : keep[p]) labels[p].push_back(game.labels(static_cast<int>(p))[s]);
  }
  return NormalFormGame::from_function(std::move(labels), [&](int p, const JointIndex& sub) {
    JointIndex full(sub.size());
    for (std::size_t q = 0; q < sub.size(); ++q) full[q] = keep[q][sub[q]];
    return game.payoff(p, full);
  });
}

}  // namespace internal

inline RatingReport payoff_rating(const NormalFormGame& game, const JointDistribution& dist,
                                  UndefinedPolicy policy = UndefinedPolicy::kMarkUndefined,
                                  double zero_threshold = kDefaultZeroThreshold,
                                  const SubgameResolver& resolver = {}) {
  check_same_shape(game, dist);
  if (!(zero_threshold >= 0.0)) throw InvalidArgument("zero threshold must be >= 0");
  const Layout& layout = game.layout();
  const int n = game.num_players();
  RatingReport report;
  report.joint = dist;
  for (int p = 0; p < n; ++p) {
    const std::size_t s = game.num_strategies(p);
    const std::vector<double> mass = marginal(dist, p);
    std::vector<double> weighted(s, 0.0);
    for (std::size_t j = 0; j < layout.size(); ++j) {
      weighted[layout.strategy_of(j, p)] += game.payoff(p, j) * dist[j];
    }
    std::vector<StrategyRating> row(s);
    for (std::size_t a = 0; a < s; ++a) {
      row[a].label = game.labels(p)[a];
      row[a].mass = mass[a];
      row[a].defined = mass[a] > zero_threshold && mass[a] > 0.0;
      if (row[a].defined) {
        row[a].rating = weighted[a] / mass[a];
      } else if (policy == UndefinedPolicy::kAssignMinPayoff) {
        row[a].rating = game.min_payoff(p);
        row[a].defined = true;
      } else {
        row[a].rating = std::numeric_limits<double>::quiet_NaN();
      }
    }
    report.ratings.push_back(std::move(row));
    report.expected_payoffs.push_back(expected_payoff(game, dist, p));
    report.min_payoffs.push_back(game.min_payoff(p));
    report.max_payoffs.push_back(game.max_payoff(p));
  }

  if (policy != UndefinedPolicy::kPruneAndRerate) return report;
  // Drop every rated strategy of players that have unrated ones and re-rate
  // the remainder in the sub-game.
  std::vector<std::vector<std::size_t>> keep(n);
  bool any_undefined = false;
  for (int p = 0; p < n; ++p) {
    std::vector<std::size_t> undefined;
    for (std::size_t a = 0; a < report.ratings[p].size(); ++a) {
      if (!report.ratings[p][a].defined) undefined.push_back(a);
    }
    if (undefined.empty()) {
      keep[p].resize(game.num_strategies(p));
      for (std::size_t a = 0; a < keep[p].size(); ++a) keep[p][a] = a;
    } else {
      keep[p] = std::move(undefined);
      any_undefined = true;
    }
  }
  if (!any_undefined) return report;
  if (!resolver) throw InvalidArgument("prune policy needs a sub-game resolver");
  const NormalFormGame sub = internal::subgame(game, keep);
  const RatingReport sub_report =
      payoff_rating(sub, resolver(sub), policy, zero_threshold, resolver);
  for (int p = 0; p < n; ++p) {
    if (keep[p].size() == game.num_strategies(p)) continue;
    for (std::size_t i = 0; i < keep[p].size(); ++i) {
      StrategyRating r = sub_report.ratings[p][i];
      r.tier += 1;
      r.mass = 0.0;
      report.ratings[p][keep[p][i]] = r;
    }
  }
  return report;
}

inline RatingReport uniform_rating(const NormalFormGame& game) {
  return payoff_rating(game, JointDistribution::uniform(game.shape()));
}

inline std::vector<std::vector<double>> mass_rating(const JointDistribution& dist) {
  std::vector<std::vector<double>> out;
  for (int p = 0; p < dist.layout().num_players(); ++p) out.push_back(marginal(dist, p));
  return out;
}

// Ordered groups of strategy labels per player, best first. Ratings within
// group_tol of their neighbour share a group; undefined strategies form the
// last group. A negative group_tol selects 1e-4 times the player's payoff
// range.
using Ranking = std::vector<std::vector<std::vector<std::string>>>;

inline Ranking rank_from_ratings(const RatingReport& report, double group_tol = -1.0) {
  Ranking out;
  for (std::size_t p = 0; p < report.ratings.size(); ++p) {
    const auto& row = report.ratings[p];
    const double tol = group_tol >= 0.0
                           ? group_tol
                           : 1e-4 * (report.max_payoffs[p] - report.min_payoffs[p]);
    std::vector<std::size_t> order;
    std::vector<std::string> undefined;
    for (std::size_t a = 0; a < row.size(); ++a) {
      if (row[a].defined) {
        order.push_back(a);
      } else {
        undefined.push_back(row[a].label);
      }
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      if (row[x].tier != row[y].tier) return row[x].tier < row[y].tier;
      return row[x].rating > row[y].rating;
    });
    std::vector<std::vector<std::string>> groups;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const auto& cur = row[order[i]];
      const bool joins = i > 0 && row[order[i - 1]].tier == cur.tier &&
                         row[order[i - 1]].rating - cur.rating <= tol;
      if (!joins) groups.emplace_back();
      groups.back().push_back(cur.label);
    }
    if (!undefined.empty()) groups.push_back(std::move(undefined));
    out.push_back(std::move(groups));
  }
  return out;
}

struct RateConfig {
  SolveConfig solve;
  UndefinedPolicy policy = UndefinedPolicy::kMarkUndefined;
  double zero_threshold = kDefaultZeroThreshold;
};

// Solves for a joint under `config` and rates every strategy against it.
// Pruned sub-games are solved with the same concept and selection.
inline RatingReport rate(const NormalFormGame& game, const RateConfig& config = {}) {
  const EquilibriumSolution sol = solve(game, config.solve);
  SubgameResolver resolver = [&](const NormalFormGame& sub) {
    SolveConfig sub_config = config.solve;
    sub_config.weights.reset();
    return solve(sub, sub_config).dist;
  };
  RatingReport report =
      payoff_rating(game, sol.dist, config.policy, config.zero_threshold, resolver);
  report.concept_name = to_string(config.solve.concept_kind);
  report.selection_name = config.solve.concept_kind == Concept::kMENE
                              ? "max-entropy"
                              : to_string(config.solve.selection);
  report.epsilon = sol.epsilon;
  report.converged = sol.converged;
  return report;
}

struct SweepOptions {
  double delta_abs = 1e-6;
  double delta_rel = 1e-4;
  UndefinedPolicy policy = UndefinedPolicy::kMarkUndefined;
  double zero_threshold = kDefaultZeroThreshold;
  Tolerances tolerances;
};

struct SweepPoint {
  double rho = 0.0;
  EpsilonVector epsilon;
  // Epsilon was raised to epsilon_min + delta because rho asked for an
  // infeasible or boundary value.
  bool clamped = false;
  bool failed = false;
  std::string error;
  bool converged = false;
  double entropy = 0.0;
  std::optional<RatingReport> report;
};

inline std::vector<double> linear_grid(double start, double stop, int count) {
  if (count < 2) throw InvalidArgument("grid needs at least two points");
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i) {
    grid[i] = i + 1 == count ? stop : start + (stop - start) * i / (count - 1);
  }
  return grid;
}

// Ratings along epsilon = rho * epsilon_uniform. Points are returned sorted by
// rho; a failing point is reported, not thrown.
inline std::vector<SweepPoint> epsilon_sweep(const NormalFormGame& game,
                                             Concept concept_kind, Selection selection,
                                             std::vector<double> grid,
                                             const SweepOptions& options = {}) {
  std::sort(grid.begin(), grid.end());
  const EpsilonVector uni = epsilon_uniform(game, concept_kind);
  const double eps_min = epsilon_min(game, concept_kind).epsilon.front();
  const double floor =
      eps_min + std::max(options.delta_abs, options.delta_rel * std::abs(eps_min));
  std::vector<SweepPoint> out;
  for (double rho : grid) {
    SweepPoint pt;
    pt.rho = rho;
    for (double u : uni) {
      double e = rho * u;
      if (e <= eps_min) {
        e = std::max(e, floor);
        pt.clamped = true;
      }
      pt.epsilon.push_back(e);
    }
    if (pt.clamped) {
      for (double& e : pt.epsilon) e = std::max(e, floor);
    }
    try {
      RateConfig config;
      config.solve.concept_kind = concept_kind;
      config.solve.selection = selection;
      config.solve.epsilon_mode = AbsoluteEpsilon{pt.epsilon};
      config.solve.tolerances = options.tolerances;
      config.policy = options.policy;
      config.zero_threshold = options.zero_threshold;
      RatingReport report = rate(game, config);
      pt.converged = report.converged;
      pt.entropy = report.joint->entropy();
      pt.report = std::move(report);
    } catch (const Error& e) {
      pt.failed = true;
      pt.error = e.what();
    }
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace eqrate

#endif  // EQRATE_RATING_HPP_
