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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eqrate/eqrate.hpp"
#include "oracles.hpp"
#include "test_games.hpp"

namespace eqrate {
namespace {

using Clock = std::chrono::steady_clock;

// Collects the failed comparisons of one criterion.
class Check {
 public:
  void near(double actual, double expected, double tol, const std::string& what) {
    ++count_;
    if (!(std::abs(actual - expected) <= tol)) {
      fail(what + ": got " + fmt(actual) + ", want " + fmt(expected) + " +- " + fmt(tol));
    }
  }
  void that(bool ok, const std::string& what) {
    ++count_;
    if (!ok) fail(what);
  }
  void fail(const std::string& what) {
    if (failures_.size() < 5) failures_.push_back(what);
    ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  int count() const { return count_; }
  int failed() const { return failed_; }
  const std::vector<std::string>& failures() const { return failures_; }

  static std::string fmt(double v) {
    std::ostringstream s;
    s.precision(10);
    s << v;
    return s.str();
  }

 private:
  int count_ = 0;
  int failed_ = 0;
  std::vector<std::string> failures_;
};

std::vector<double> ratings_of(const RatingReport& r, int p) {
  std::vector<double> out;
  for (const auto& s : r.ratings[p]) out.push_back(s.rating);
  return out;
}

NormalFormGame duplicate_strategy(const NormalFormGame& g, int p, std::size_t k) {
  auto labels = g.all_labels();
  labels[p].push_back(labels[p][k] + "'");
  const std::size_t original = g.num_strategies(p);
  return NormalFormGame::from_function(labels, [&](int q, const JointIndex& a) {
    JointIndex b = a;
    if (b[p] == original) b[p] = k;
    return g.payoff(q, b);
  });
}

// Undefined ratings (mass at or below the zero threshold) compare equal to
// each other and unequal to any number.
// Returns true when both are undefined.
bool same_rating(Check& c, const StrategyRating& a, const StrategyRating& b, double tol,
                 const std::string& what) {
  c.that(a.defined == b.defined, what + ": one rating undefined");
  if (a.defined && b.defined) c.near(a.rating, b.rating, tol, what);
  return !a.defined && !b.defined;
}

// Sorted ratings with undefined ones first as NaN-free sentinels.
std::vector<double> rating_multiset(const RatingReport& r, int p) {
  std::vector<double> out;
  for (const auto& s : r.ratings[p]) {
    out.push_back(s.defined ? s.rating : -std::numeric_limits<double>::infinity());
  }
  std::sort(out.begin(), out.end());
  return out;
}

RateConfig rate_config(Concept c, EpsilonMode mode = MinPlusEpsilon{}) {
  RateConfig cfg;
  cfg.solve.concept_kind = c;
  cfg.solve.epsilon_mode = std::move(mode);
  return cfg;
}

// Table of small games: equilibrium ratings at epsilon_min+, uniform ratings
// and selected joints.
Check criterion1(std::string& detail) {
  Check c;
  double slowest = 0.0;
  auto timed_rate = [&](const NormalFormGame& g) {
    const auto t0 = Clock::now();
    RatingReport r = rate(g, rate_config(Concept::kCCE));
    slowest = std::max(slowest, std::chrono::duration<double>(Clock::now() - t0).count());
    return r;
  };
  auto expect_row = [&](const std::string& name, const std::vector<double>& got,
                        const std::vector<double>& want, double tol) {
    c.that(got.size() == want.size(), name + ": size");
    for (std::size_t i = 0; i < std::min(got.size(), want.size()); ++i) {
      c.near(got[i], want[i], tol, name + "[" + std::to_string(i) + "]");
    }
  };

  const RatingReport brps = timed_rate(testing::brps());
  expect_row("BRPS ER", ratings_of(brps, 0), {0.5, 0.5, 0.5}, 1e-2);
  expect_row("BRPS UR", ratings_of(uniform_rating(testing::brps()), 0), {0.567, 0.533, 0.400}, 1e-2);

  const RatingReport dom = timed_rate(testing::dominated_brps());
  expect_row("dominated BRPS ER", ratings_of(dom, 0), {0.5, 0.5, 0.5, 0.25, 0.25, 0.25}, 1e-2);
  expect_row("dominated BRPS UR", ratings_of(uniform_rating(testing::dominated_brps()), 0),
             {0.283, 0.267, 0.200, 0.142, 0.133, 0.100}, 1e-2);
  {
    // One third of the mass on the full-scale cycle, two thirds on the half.
    const auto m = marginal(*dom.joint, 0);
    c.near(m[0] + m[1] + m[2], 1.0 / 3.0, 1e-2, "dominated BRPS mass on full cycle");
  }

  const RatingReport pd = timed_rate(testing::prisoners_dilemma());
  expect_row("PD ER", ratings_of(pd, 0), {-3.0, -2.0}, 1e-2);
  expect_row("PD UR", ratings_of(uniform_rating(testing::prisoners_dilemma()), 0), {-2.0, -1.0}, 1e-12);

  const RatingReport bos = timed_rate(testing::bach_or_stravinsky());
  expect_row("BoS ER", ratings_of(bos, 0), {3.0, 2.0}, 1e-2);
  expect_row("BoS UR", ratings_of(uniform_rating(testing::bach_or_stravinsky()), 0), {1.5, 1.0}, 1e-12);

  const RatingReport coord = timed_rate(testing::coordination());
  expect_row("coordination ER", ratings_of(coord, 0), {1.0, 0.5}, 1e-2);
  expect_row("coordination UR", ratings_of(uniform_rating(testing::coordination()), 0), {0.5, 0.25}, 1e-12);
  expect_row("coordination joint", coord.joint->probs(), {1.0 / 3.0, 0.0, 0.0, 2.0 / 3.0}, 1e-2);

  const RatingReport chicken = timed_rate(testing::chicken());
  expect_row("chicken ER", ratings_of(chicken, 0), {1.0, -1.0}, 1e-2);
  expect_row("chicken UR", ratings_of(uniform_rating(testing::chicken()), 0), {-4.5, -0.5}, 1e-12);

  c.that(slowest < 1.0, "slowest solve took " + Check::fmt(slowest) + " s");
  detail = "6 games, slowest solve " + Check::fmt(slowest) + " s";
  return c;
}

Check criterion2(std::string& detail) {
  Check c;
  const EquilibriumSolution sol = solve(testing::brps(), SolveConfig{});
  const std::vector<double> table = {.04, .10, .06, .10, .25, .15, .06, .15, .09};
  double worst = 0.0;
  for (std::size_t j = 0; j < table.size(); ++j) {
    c.near(sol.dist[j], table[j], 1e-2, "joint entry " + std::to_string(j));
    worst = std::max(worst, std::abs(sol.dist[j] - table[j]));
  }
  for (int p = 0; p < 2; ++p) {
    const auto m = marginal(sol.dist, p);
    const std::vector<double> want = {0.2, 0.5, 0.3};
    for (int i = 0; i < 3; ++i) c.near(m[i], want[i], 1e-3, "marginal " + std::to_string(i));
  }
  detail = "max joint deviation " + Check::fmt(worst);
  return c;
}

Check criterion3(std::string& detail) {
  Check c;
  // Coordination: mass 1/3 on (P,P) and 2/3 on (L,L) equalizes both
  // deviation gains at -1/3. A grid minimax over the simplex confirms it.
  const double coord = epsilon_min(testing::coordination(), Concept::kCCE).epsilon.front();
  c.near(coord, -1.0 / 3.0, 1e-6, "coordination eps_min(CCE)");
  double grid_best = std::numeric_limits<double>::infinity();
  const int steps = 60;
  for (int a = 0; a <= steps; ++a) {
    for (int b = 0; a + b <= steps; ++b) {
      for (int d = 0; a + b + d <= steps; ++d) {
        const double x[4] = {a / double(steps), b / double(steps), d / double(steps),
                             (steps - a - b - d) / double(steps)};
        const JointDistribution dist({2, 2}, {x[0], x[1], x[2], x[3]});
        const auto g = testing::cce_gain_oracle(testing::coordination(), dist);
        grid_best = std::min(grid_best, std::max(g[0], g[1]));
      }
    }
  }
  c.near(coord, grid_best, 1e-6, "coordination eps_min vs grid minimax");

  c.near(epsilon_min(testing::prisoners_dilemma(), Concept::kCCE).epsilon.front(), 0.0, 1e-8,
         "PD eps_min(CCE)");
  for (double e : epsilon_uniform(testing::brps(), Concept::kCE)) {
    c.near(e, 0.5 / 9.0, 1e-6, "BRPS eps_uni(CE)");
  }
  for (double e : epsilon_uniform(testing::brps(), Concept::kCCE)) {
    c.near(e, 0.6 / 9.0, 1e-6, "BRPS eps_uni(CCE)");
  }

  std::mt19937_64 rng(1001);
  for (int trial = 0; trial < 200; ++trial) {
    const NormalFormGame g = testing::random_game(testing::random_shape(rng, 3, 4), rng);
    const JointDistribution u = JointDistribution::uniform(g.shape());
    for (Concept k : {Concept::kCE, Concept::kCCE}) {
      const auto uni = epsilon_uniform(g, k);
      const auto viol = k == Concept::kCE ? testing::ce_gain_oracle(g, u) : testing::cce_gain_oracle(g, u);
      for (std::size_t p = 0; p < uni.size(); ++p) {
        c.that(viol[p] <= uni[p] + 1e-9, "uniform violation exceeds eps_uni");
        c.near(std::max(viol[p], 0.0), uni[p], 1e-9, "binding row of uniform not tight");
      }
    }
  }
  detail = "coordination " + Check::fmt(coord) + ", 200 random games";
  return c;
}

Check criterion4(std::string& detail) {
  Check c;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1002);
  std::uniform_int_distribution<std::size_t> size(2, 8);
  for (int trial = 0; trial < 100; ++trial) {
    const NormalFormGame g = testing::random_zero_sum(size(rng), size(rng), rng);
    const RatingReport r = rate(g, rate_config(Concept::kMENE));
    for (int p = 0; p < 2; ++p) {
      const auto opp = marginal(*r.joint, 1 - p);
      const auto na = testing::nash_average_oracle(g, opp, p);
      std::vector<double> supported;
      for (std::size_t a = 0; a < na.size(); ++a) {
        const StrategyRating& s = r.ratings[p][a];
        if (!s.defined) continue;
        c.near(s.rating, na[a], 1e-8, "NA equivalence");
        supported.push_back(s.rating);
      }
      c.that(!supported.empty(), "no supported strategy");
      if (supported.empty()) continue;
      const auto [lo, hi] = std::minmax_element(supported.begin(), supported.end());
      c.that(*hi - *lo <= 1e-6, "supported ratings differ by " + Check::fmt(*hi - *lo));
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  c.that(secs < 30.0, "took " + Check::fmt(secs) + " s");
  detail = "100 games in " + Check::fmt(secs) + " s";
  return c;
}

Check criterion5(std::string& detail) {
  Check c;
  std::mt19937_64 rng(1003);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const Shape shape(trial % 2 == 0 ? 2 : 3, 2);
    const NormalFormGame g = testing::random_game(shape, rng);
    const DeviationConstraints ce = build_constraints(g, Concept::kCE);
    const DeviationConstraints cce = build_constraints(g, Concept::kCCE);
    for (int s = 0; s < 50; ++s) {
      const JointDistribution d = testing::random_distribution(shape, rng);
      const auto a = max_violation(ce, d);
      const auto b = max_violation(cce, d);
      for (std::size_t p = 0; p < a.size(); ++p) {
        c.near(a[p], b[p], 1e-10, "CE vs CCE violation");
        worst = std::max(worst, std::abs(a[p] - b[p]));
      }
    }
  }
  detail = "25000 joints, max gap " + Check::fmt(worst);
  return c;
}

Check criterion6(std::string& detail) {
  Check c;
  std::mt19937_64 rng(1004);
  double smallest = 1.0;
  int sweeps = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const NormalFormGame g = testing::random_game(testing::random_shape(rng, 3, 3), rng);
    for (Concept k : {Concept::kCE, Concept::kCCE}) {
      const double eps_min = epsilon_min(g, k).epsilon.front();
      SolveConfig near_min;
      near_min.concept_kind = k;
      near_min.epsilon_mode = AbsoluteEpsilon{{eps_min + 1e-4}};
      const EquilibriumSolution s = solve(g, near_min);
      const double lo = *std::min_element(s.dist.probs().begin(), s.dist.probs().end());
      smallest = std::min(smallest, lo);
      c.that(lo > 0.0, "zero entry at eps_min + 1e-4");

      SolveConfig at_uni;
      at_uni.concept_kind = k;
      at_uni.epsilon_mode = NormalizedEpsilon{1.0};
      const EquilibriumSolution u = solve(g, at_uni);
      const double flat = 1.0 / static_cast<double>(g.num_joints());
      for (double v : u.dist.probs()) c.near(v, flat, 1e-6, "uniform endpoint");

      const auto pts = epsilon_sweep(g, k, Selection::kMaxEntropy, linear_grid(0.0, 1.0, 10));
      ++sweeps;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        c.that(!pts[i].failed && pts[i].converged, "sweep point failed: " + pts[i].error);
        if (i > 0) {
          c.that(pts[i].entropy >= pts[i - 1].entropy - 1e-9,
                 "entropy decreased from " + Check::fmt(pts[i - 1].entropy) + " to " +
                     Check::fmt(pts[i].entropy));
        }
      }
    }
  }
  detail = std::to_string(sweeps) + " sweeps, smallest entry near eps_min " + Check::fmt(smallest);
  return c;
}

Check criterion7(std::string& detail) {
  Check c;
  int both_undefined = 0;
  std::mt19937_64 rng(1005);
  for (int trial = 0; trial < 30; ++trial) {
    // Duplicated strategies rated directly and through elimination.
    const NormalFormGame zs = testing::random_zero_sum(3, 3, rng);
    const NormalFormGame zs2 = duplicate_strategy(zs, trial % 2, trial % 3);
    const RatingReport mr = rate(zs2, rate_config(Concept::kMENE));
    const auto& zrow = mr.ratings[trial % 2];
    both_undefined += same_rating(c, zrow[trial % 3], zrow.back(), 1e-6, "MENE duplicate ratings");

    const Shape shape = testing::random_shape(rng, 3, 3);
    const NormalFormGame g = testing::random_game(shape, rng);
    const int p = trial % static_cast<int>(shape.size());
    const std::size_t k = trial % shape[p];
    const NormalFormGame g2 = duplicate_strategy(g, p, k);
    for (Concept con : {Concept::kCE, Concept::kCCE}) {
      const RatingReport direct = rate(g2, rate_config(con));
      both_undefined += same_rating(c, direct.ratings[p][k], direct.ratings[p].back(), 1e-6,
                                    to_string(con) + " duplicate ratings");
      // The same joint rated without a zero threshold: every pair with
      // positive mass gets a number.
      const RatingReport all = payoff_rating(g2, *direct.joint, UndefinedPolicy::kMarkUndefined, 0.0);
      same_rating(c, all.ratings[p][k], all.ratings[p].back(), 1e-6,
                  to_string(con) + " duplicate ratings, no threshold");

      SolveConfig cfg;
      cfg.concept_kind = con;
      const auto [reduced, mapping] = eliminate_exact_duplicates(g2);
      const JointDistribution lifted = redistribute_mass(solve(reduced, cfg).dist, mapping);
      const RatingReport piped = payoff_rating(g2, lifted, UndefinedPolicy::kMarkUndefined, 0.0);
      const RatingReport base =
          payoff_rating(g, solve(g, cfg).dist, UndefinedPolicy::kMarkUndefined, 0.0);
      same_rating(c, piped.ratings[p][k], piped.ratings[p].back(), 1e-6,
                  "eliminated duplicate ratings");
      same_rating(c, piped.ratings[p][k], base.ratings[p][k], 1e-6,
                  "eliminated vs unduplicated rating");
    }
  }

  for (int trial = 0; trial < 40; ++trial) {
    const NormalFormGame g = testing::random_symmetric(2 + trial % 4, rng);
    for (Concept con : {Concept::kCE, Concept::kCCE}) {
      const RatingReport r = rate(g, rate_config(con));
      const auto a = rating_multiset(r, 0);
      const auto b = rating_multiset(r, 1);
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::isinf(a[i]) || std::isinf(b[i])) {
          c.that(a[i] == b[i], "symmetric multiset: undefined counts differ");
        } else {
          c.near(a[i], b[i], 1e-6, "symmetric multiset");
        }
      }
    }
  }

  const double scale = 7.3;
  const double shift = -2.1;
  double worst = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    const NormalFormGame g = testing::random_game(testing::random_shape(rng, 3, 3), rng);
    std::vector<double> t = g.payoff_tensor();
    for (double& v : t) v = scale * v + shift;
    const NormalFormGame h(g.all_labels(), t);
    for (Concept con : {Concept::kCE, Concept::kCCE}) {
      const double eps_min = epsilon_min(g, con).epsilon.front();
      const EpsilonVector uni = epsilon_uniform(g, con);
      const double eps_uni = *std::max_element(uni.begin(), uni.end());
      const double eps = eps_min + 0.3 * (eps_uni - eps_min);
      SolveConfig a;
      a.concept_kind = con;
      a.epsilon_mode = AbsoluteEpsilon{{eps}};
      SolveConfig b = a;
      b.epsilon_mode = AbsoluteEpsilon{{scale * eps}};
      const JointDistribution da = solve(g, a).dist;
      const JointDistribution db = solve(h, b).dist;
      const double gap = testing::max_abs_diff(da.probs(), db.probs());
      worst = std::max(worst, gap);
      c.that(gap <= 1e-6, "affine transform changed sigma by " + Check::fmt(gap));
    }
  }
  detail = "affine max gap " + Check::fmt(worst) + ", " + std::to_string(both_undefined) +
           " duplicate pairs both unrated under the zero threshold";
  return c;
}

MatchRecord record(const std::string& h, const std::string& a, Outcome o) {
  MatchRecord r;
  r.home = h;
  r.away = a;
  r.outcome = o;
  return r;
}

Check criterion8(std::string& detail) {
  Check c;
  const std::vector<std::string> clubs = {"Ashford", "Brampton", "Calder", "Dunmore"};
  // Venue-neutral season: each pair plays four times at each venue and the
  // results depend only on who the clubs are, so the home and away slices
  // are exact transposes.
  std::mt19937_64 rng(1006);
  std::uniform_int_distribution<int> pick(0, 2);
  std::vector<MatchRecord> neutral;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      for (int r = 0; r < 4; ++r) {
        const int o = pick(rng);  // 0: i wins, 1: j wins, 2: draw
        neutral.push_back(record(clubs[i], clubs[j],
                                 o == 0 ? Outcome::kHomeWin : o == 1 ? Outcome::kAwayWin : Outcome::kDraw));
        neutral.push_back(record(clubs[j], clubs[i],
                                 o == 0 ? Outcome::kAwayWin : o == 1 ? Outcome::kHomeWin : Outcome::kDraw));
      }
    }
  }
  const NormalFormGame g = build_location_game(neutral);
  c.that(g.num_players() == 3 && g.shape() == Shape{2, 4, 4} &&
             g.payoff_tensor().size() == 3u * 2u * 4u * 4u,
         "location tensor is not 3 x 2 x 4 x 4");
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (i == j) continue;
      c.that(g.payoff(0, {1, i, j}) == g.payoff(0, {0, j, i}), "location slices not transposed");
      for (std::size_t loc = 0; loc < 2; ++loc) {
        c.that(g.payoff(1, {loc, i, j}) == g.payoff(2, {loc, j, i}), "club slices not transposed");
        c.that(g.payoff(1, {loc, i, j}) + g.payoff(2, {loc, i, j}) == 1.0,
               "club slices not inverse");
      }
    }
  }

  // Home-biased season: the home side wins 3 of 4 and the rest are split.
  std::vector<MatchRecord> biased;
  for (const auto& h : clubs) {
    for (const auto& a : clubs) {
      if (h == a) continue;
      for (Outcome o : {Outcome::kHomeWin, Outcome::kHomeWin, Outcome::kHomeWin,
                        (h < a ? Outcome::kDraw : Outcome::kAwayWin)}) {
        biased.push_back(record(h, a, o));
      }
    }
  }
  const NormalFormGame b = build_location_game(biased);
  c.that(b.shape() == Shape{2, 4, 4}, "biased location tensor shape");
  RateConfig cfg = rate_config(Concept::kCCE);
  cfg.policy = UndefinedPolicy::kAssignMinPayoff;
  const RatingReport r = rate(b, cfg);
  const double home = r.ratings[0][0].rating;
  const double away = r.ratings[0][1].rating;
  c.that(home > away, "Home rating " + Check::fmt(home) + " not above Away " + Check::fmt(away));
  detail = "Home " + Check::fmt(home) + " vs Away " + Check::fmt(away);
  return c;
}

Check criterion9(std::string& detail) {
  Check c;
  const NormalFormGame g = testing::brps();
  const double eps_min = epsilon_min(g, Concept::kCCE).epsilon.front();
  const double rho_min = eps_min / epsilon_uniform(g, Concept::kCCE).front();
  const auto pts =
      epsilon_sweep(g, Concept::kCCE, Selection::kMaxEntropy, linear_grid(rho_min, 1.0, 11));
  const RatingReport uniform = uniform_rating(g);
  const RatingReport& top = *pts.back().report;
  c.that(pts.back().rho == 1.0, "last grid point is not rho = 1");
  for (int p = 0; p < 2; ++p) {
    for (std::size_t a = 0; a < 3; ++a) {
      c.near(top.ratings[p][a].rating, uniform.ratings[p][a].rating, 1e-12, "rho = 1 rating");
    }
  }
  const RatingReport& bottom = *pts.front().report;
  for (int p = 0; p < 2; ++p) {
    for (std::size_t a = 0; a < 3; ++a) c.near(bottom.ratings[p][a].rating, 0.5, 1e-2, "rho_min rating");
  }
  // Observational: the S rating as rho decreases.
  int rises = 0;
  int falls = 0;
  std::ostringstream trend;
  for (std::size_t i = pts.size(); i-- > 0;) {
    const double s = pts[i].report->ratings[0][2].rating;
    trend << (i + 1 == pts.size() ? "" : " ") << Check::fmt(std::round(s * 1e4) / 1e4);
    if (i + 1 < pts.size()) {
      const double prev = pts[i + 1].report->ratings[0][2].rating;
      (s >= prev - 1e-9 ? rises : falls)++;
    }
  }
  std::cout << "  observed S rating from rho = 1 down to rho_min: " << trend.str() << "\n";
  detail = "rho_min " + Check::fmt(rho_min) + ", S trend " + std::to_string(rises) + " up / " +
           std::to_string(falls) + " down (logged only)";
  return c;
}

}  // namespace
}  // namespace eqrate

int main() {
  using eqrate::Check;
  struct Criterion {
    int id;
    const char* name;
    std::function<Check(std::string&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "reference game ratings", eqrate::criterion1},
      {2, "BRPS max-entropy CCE joint", eqrate::criterion2},
      {3, "epsilon_min and epsilon_uniform", eqrate::criterion3},
      {4, "zero-sum MENE ratings equal Nash averages", eqrate::criterion4},
      {5, "CE and CCE coincide on two-strategy games", eqrate::criterion5},
      {6, "full support and uniform endpoint", eqrate::criterion6},
      {7, "duplicate, symmetry and affine consistency", eqrate::criterion7},
      {8, "three-player location game", eqrate::criterion8},
      {9, "normalized epsilon sweep", eqrate::criterion9},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    std::string detail;
    Check result;
    try {
      result = c.run(detail);
    } catch (const std::exception& e) {
      result.fail(std::string("exception: ") + e.what());
    }
    std::cout << (result.ok() ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.name
              << " (" << result.count() << " checks";
    if (!detail.empty()) std::cout << "; " << detail;
    std::cout << ")\n";
    if (!result.ok()) {
      ++failed;
      std::cout << "  " << result.failed() << " failed checks, first ones:\n";
      for (const auto& f : result.failures()) std::cout << "    " << f << "\n";
    }
    std::cout.flush();
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << "\n";
  return failed == 0 ? 0 : 1;
}
