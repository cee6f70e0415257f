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

#include <gtest/gtest.h>

#include <random>

#include "eqrate/game.hpp"
#include "test_games.hpp"

namespace eqrate {
namespace {

using testing::brps;

const std::vector<double> kBrpsNash = {0.2, 0.5, 0.3};

JointDistribution brps_joint() { return outer_product({kBrpsNash, kBrpsNash}); }

TEST(LayoutTest, FlattenRoundTrip) {
  Layout l({2, 3, 4});
  EXPECT_EQ(l.size(), 24u);
  for (std::size_t j = 0; j < l.size(); ++j) EXPECT_EQ(l.flatten(l.unflatten(j)), j);
  // Last player varies fastest.
  EXPECT_EQ(l.flatten({0, 0, 1}), 1u);
  EXPECT_EQ(l.flatten({1, 0, 0}), 12u);
  EXPECT_EQ(l.with_strategy(l.flatten({1, 2, 3}), 1, 0), l.flatten({1, 0, 3}));
}

TEST(GameTest, RejectsShapeMismatchAndNonFinite) {
  EXPECT_THROW(NormalFormGame::from_payoffs({2, 2}, std::vector<double>(7, 0.0)), ShapeError);
  std::vector<double> p(8, 0.0);
  p[3] = std::numeric_limits<double>::infinity();
  EXPECT_THROW(NormalFormGame::from_payoffs({2, 2}, p), NonFinitePayoffError);
}

TEST(GameTest, PayoffAccess) {
  const NormalFormGame pd = testing::prisoners_dilemma();
  EXPECT_EQ(pd.payoff(0, JointIndex{0, 1}), -3.0);
  EXPECT_EQ(pd.payoff(1, JointIndex{0, 1}), 0.0);
  EXPECT_EQ(pd.min_payoff(0), -3.0);
  EXPECT_EQ(pd.max_payoff(0), 0.0);
}

TEST(DistributionTest, Validation) {
  EXPECT_THROW(JointDistribution({2}, {0.5, 0.6}), InvalidArgument);
  EXPECT_THROW(JointDistribution({2}, {1.5, -0.5}), InvalidArgument);
  EXPECT_THROW(JointDistribution({3}, {0.5, 0.5}), ShapeError);
  EXPECT_NO_THROW(JointDistribution({2}, {0.5, 0.5 + 1e-10}));
}

TEST(MarginalTest, Examples) {
  const auto m = marginal(brps_joint(), 0);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(m[i], kBrpsNash[i], 1e-12);
  const auto dd = JointDistribution::point_mass({2, 2}, {1, 1});
  EXPECT_EQ(marginal(dd, 0), (std::vector<double>{0.0, 1.0}));
  const auto u = marginal(JointDistribution::uniform({2, 3}), 1);
  for (double v : u) EXPECT_NEAR(v, 1.0 / 3.0, 1e-15);
}

TEST(ConditionalTest, Examples) {
  // BRPS joint row for R is (.04, .10, .06) / 0.2.
  const auto c = conditional(brps_joint(), 0, 0);
  ASSERT_TRUE(c.has_value());
  EXPECT_NEAR((*c)[0], 0.04 / 0.2, 1e-12);
  EXPECT_NEAR((*c)[1], 0.10 / 0.2, 1e-12);
  EXPECT_NEAR((*c)[2], 0.06 / 0.2, 1e-12);
  EXPECT_FALSE(conditional(JointDistribution::point_mass({2, 2}, {1, 1}), 0, 0, 0.0));
  const auto uc = conditional(JointDistribution::uniform({2, 2, 3}), 1, 1);
  ASSERT_TRUE(uc.has_value());
  for (double v : *uc) EXPECT_NEAR(v, 1.0 / 6.0, 1e-15);
}

TEST(ConditionalTest, ThresholdControlsDefinedness) {
  const JointDistribution d({2, 1}, {1e-8, 1.0 - 1e-8});
  EXPECT_TRUE(conditional(d, 0, 0, 1e-9).has_value());
  EXPECT_FALSE(conditional(d, 0, 0, 1e-7).has_value());
}

TEST(ExpectedPayoffTest, Examples) {
  const NormalFormGame pd = testing::prisoners_dilemma();
  EXPECT_EQ(expected_payoff(pd, JointDistribution::point_mass({2, 2}, {1, 1}), 0), -2.0);
  EXPECT_EQ(expected_payoff(pd, JointDistribution::point_mass({2, 2}, {0, 1}), 0), -3.0);
  // Hand sum of BRPS payoffs under the product of (.2,.5,.3) marginals.
  double hand = 0.0;
  const auto& g = testing::brps_matrix();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) hand += g[i][j] * kBrpsNash[i] * kBrpsNash[j];
  }
  EXPECT_NEAR(hand, 0.5, 1e-12);
  EXPECT_NEAR(expected_payoff(brps(), brps_joint(), 0), 0.5, 1e-12);
  EXPECT_THROW(expected_payoff(pd, JointDistribution::uniform({3, 2}), 0), ShapeError);
}

TEST(OuterProductTest, Examples) {
  const JointDistribution d = brps_joint();
  const std::vector<double> table = {.04, .10, .06, .10, .25, .15, .06, .15, .09};
  for (std::size_t j = 0; j < 9; ++j) EXPECT_NEAR(d[j], table[j], 1e-12);
  const auto pm = outer_product({{0.0, 1.0}, {1.0, 0.0, 0.0}});
  EXPECT_EQ(pm.at({1, 0}), 1.0);
  const auto u = outer_product({{0.5, 0.5}, {0.25, 0.25, 0.25, 0.25}});
  for (double v : u.probs()) EXPECT_NEAR(v, 0.125, 1e-15);
}

TEST(SymmetryTest, Examples) {
  EXPECT_TRUE(is_symmetric(brps()));
  EXPECT_TRUE(is_symmetric(testing::prisoners_dilemma()));
  EXPECT_FALSE(is_symmetric(testing::constant_game({2, 3}, 1.0)));
  EXPECT_FALSE(is_symmetric(testing::bach_or_stravinsky()));
  // Three-player symmetric game: payoff depends on own action and the
  // number of others matching it.
  const NormalFormGame g3 = NormalFormGame::from_function(
      default_labels({2, 2, 2}), [](int p, const JointIndex& a) {
        int same = 0;
        for (std::size_t q = 0; q < a.size(); ++q) {
          if (static_cast<int>(q) != p && a[q] == a[p]) ++same;
        }
        return static_cast<double>(a[p]) * 0.3 + same;
      });
  EXPECT_TRUE(is_symmetric(g3));
}

TEST(GameProperties, MarginalsSumToOne) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Shape shape = testing::random_shape(rng);
    const JointDistribution d = testing::random_distribution(shape, rng);
    for (int p = 0; p < static_cast<int>(shape.size()); ++p) {
      double total = 0.0;
      for (double v : marginal(d, p)) total += v;
      EXPECT_NEAR(total, 1.0, 1e-9);
    }
  }
}

TEST(GameProperties, ConditionalTimesMarginalReconstructsSlice) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const Shape shape = testing::random_shape(rng);
    const JointDistribution d = testing::random_distribution(shape, rng);
    const Layout& l = d.layout();
    for (int p = 0; p < static_cast<int>(shape.size()); ++p) {
      const auto m = marginal(d, p);
      for (std::size_t s = 0; s < shape[p]; ++s) {
        const auto c = conditional(d, p, s);
        ASSERT_TRUE(c.has_value());
        for (std::size_t j = 0; j < l.size(); ++j) {
          if (l.strategy_of(j, p) != s) continue;
          EXPECT_NEAR((*c)[l.others_index(j, p)] * m[s], d[j], 1e-15);
        }
      }
    }
  }
}

TEST(GameProperties, ExpectedPayoffIsLinear) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Shape shape = testing::random_shape(rng);
    const NormalFormGame g = testing::random_game(shape, rng);
    const JointDistribution v = testing::random_distribution(shape, rng);
    const JointDistribution w = testing::random_distribution(shape, rng);
    const double alpha = u(rng);
    std::vector<double> mix(v.size());
    for (std::size_t j = 0; j < mix.size(); ++j) mix[j] = alpha * v[j] + (1 - alpha) * w[j];
    const JointDistribution m = JointDistribution::from_unnormalized(shape, mix);
    for (int p = 0; p < g.num_players(); ++p) {
      EXPECT_NEAR(expected_payoff(g, m, p),
                  alpha * expected_payoff(g, v, p) + (1 - alpha) * expected_payoff(g, w, p),
                  1e-12);
    }
  }
}

TEST(GameProperties, OuterProductMarginalsMatchInputs) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const Shape shape = testing::random_shape(rng);
    std::vector<std::vector<double>> ms;
    for (std::size_t s : shape) ms.push_back(testing::random_distribution({s}, rng).probs());
    const JointDistribution d = outer_product(ms);
    for (int p = 0; p < static_cast<int>(shape.size()); ++p) {
      const auto m = marginal(d, p);
      for (std::size_t i = 0; i < m.size(); ++i) EXPECT_NEAR(m[i], ms[p][i], 1e-12);
    }
  }
}

}  // namespace
}  // namespace eqrate
