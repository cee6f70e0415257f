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

#ifndef EQRATE_GAME_HPP_
#define EQRATE_GAME_HPP_

// Normal-form games and joint strategy distributions.
//
// Every tensor is stored flat in row-major order: the joint strategy
// (a_1, ..., a_n) lives at sum_p a_p * stride_p, with the last player's axis
// varying fastest. The payoff tensor puts the player axis first, so player
// p's block is payoffs[p * num_joints, (p + 1) * num_joints).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eqrate/errors.hpp"

namespace eqrate {

using Shape = std::vector<std::size_t>;
using JointIndex = std::vector<std::size_t>;
// One entry per player, in payoff units.
using EpsilonVector = std::vector<double>;

inline constexpr double kDefaultZeroThreshold = 1e-9;
inline constexpr double kDistributionSumTolerance = 1e-9;
inline constexpr double kDefaultSymmetryTolerance = 1e-12;

// Row-major index arithmetic over a strategy shape.
class Layout {
 public:
  Layout() = default;
  explicit Layout(Shape shape) : shape_(std::move(shape)) {
    if (shape_.empty()) throw ShapeError("a game needs at least one player");
    strides_.assign(shape_.size(), 1);
    size_ = 1;
    for (std::size_t p = shape_.size(); p-- > 0;) {
      if (shape_[p] == 0) {
        throw ShapeError("player " + std::to_string(p) + " has no strategies");
      }
      strides_[p] = size_;
      size_ *= shape_[p];
    }
  }

  const Shape& shape() const { return shape_; }
  int num_players() const { return static_cast<int>(shape_.size()); }
  std::size_t num_strategies(int player) const { return shape_[player]; }
  std::size_t size() const { return size_; }
  std::size_t stride(int player) const { return strides_[player]; }

  std::size_t strategy_of(std::size_t joint, int player) const {
    return (joint / strides_[player]) % shape_[player];
  }

  // The joint strategy obtained by replacing player's strategy with
  // `strategy`.
  std::size_t with_strategy(std::size_t joint, int player,
                            std::size_t strategy) const {
    return joint - strategy_of(joint, player) * strides_[player] +
           strategy * strides_[player];
  }

  std::size_t flatten(const JointIndex& index) const {
    if (index.size() != shape_.size()) {
      throw ShapeError("joint index has wrong number of players");
    }
    std::size_t flat = 0;
    for (std::size_t p = 0; p < shape_.size(); ++p) {
      if (index[p] >= shape_[p]) throw ShapeError("strategy index out of range");
      flat += index[p] * strides_[p];
    }
    return flat;
  }

  JointIndex unflatten(std::size_t joint) const {
    JointIndex index(shape_.size());
    for (int p = 0; p < num_players(); ++p) index[p] = strategy_of(joint, p);
    return index;
  }

  // Number of joint strategies of the other players.
  std::size_t others_size(int player) const { return size_ / shape_[player]; }

  // Position of `joint` inside the row-major tensor over a_{-p}.
  std::size_t others_index(std::size_t joint, int player) const {
    std::size_t flat = 0;
    for (int q = 0; q < num_players(); ++q) {
      if (q == player) continue;
      flat = flat * shape_[q] + strategy_of(joint, q);
    }
    return flat;
  }

  bool operator==(const Layout& other) const { return shape_ == other.shape_; }

 private:
  Shape shape_;
  Shape strides_;
  std::size_t size_ = 0;
};

inline std::vector<std::vector<std::string>> default_labels(const Shape& shape) {
  std::vector<std::vector<std::string>> labels(shape.size());
  for (std::size_t p = 0; p < shape.size(); ++p) {
    for (std::size_t s = 0; s < shape[p]; ++s) labels[p].push_back(std::to_string(s));
  }
  return labels;
}

// An n-player normal-form game with finite payoffs. Immutable once built.
class NormalFormGame {
 public:
  NormalFormGame(std::vector<std::vector<std::string>> labels,
                 std::vector<double> payoffs)
      : labels_(std::move(labels)), payoffs_(std::move(payoffs)) {
    Shape shape;
    for (const auto& l : labels_) shape.push_back(l.size());
    layout_ = Layout(std::move(shape));
    const std::size_t expected = layout_.size() * layout_.shape().size();
    if (payoffs_.size() != expected) {
      throw ShapeError("payoff tensor has " + std::to_string(payoffs_.size()) +
                       " entries, shape requires " + std::to_string(expected));
    }
    for (std::size_t i = 0; i < payoffs_.size(); ++i) {
      if (!std::isfinite(payoffs_[i])) {
        throw NonFinitePayoffError("payoff entry " + std::to_string(i) +
                                   " is not finite");
      }
    }
  }

  static NormalFormGame from_payoffs(const Shape& shape,
                                     std::vector<double> payoffs) {
    return NormalFormGame(default_labels(shape), std::move(payoffs));
  }

  // Builds a game from a payoff function evaluated at every (player, joint).
  static NormalFormGame from_function(
      std::vector<std::vector<std::string>> labels,
      const std::function<double(int, const JointIndex&)>& payoff) {
    Shape shape;
    for (const auto& l : labels) shape.push_back(l.size());
    Layout layout(shape);
    std::vector<double> payoffs(layout.size() * shape.size());
    for (int p = 0; p < layout.num_players(); ++p) {
      for (std::size_t j = 0; j < layout.size(); ++j) {
        payoffs[p * layout.size() + j] = payoff(p, layout.unflatten(j));
      }
    }
    return NormalFormGame(std::move(labels), std::move(payoffs));
  }

  const Layout& layout() const { return layout_; }
  const Shape& shape() const { return layout_.shape(); }
  int num_players() const { return layout_.num_players(); }
  std::size_t num_strategies(int player) const {
    return layout_.num_strategies(player);
  }
  std::size_t num_joints() const { return layout_.size(); }

  const std::vector<std::string>& labels(int player) const {
    return labels_[player];
  }
  const std::vector<std::vector<std::string>>& all_labels() const {
    return labels_;
  }

  double payoff(int player, std::size_t joint) const {
    return payoffs_[player * layout_.size() + joint];
  }
  double payoff(int player, const JointIndex& index) const {
    return payoff(player, layout_.flatten(index));
  }
  std::span<const double> payoffs(int player) const {
    return {payoffs_.data() + player * layout_.size(), layout_.size()};
  }
  const std::vector<double>& payoff_tensor() const { return payoffs_; }

  double min_payoff(int player) const {
    auto block = payoffs(player);
    return *std::min_element(block.begin(), block.end());
  }
  double max_payoff(int player) const {
    auto block = payoffs(player);
    return *std::max_element(block.begin(), block.end());
  }
  // Largest absolute payoff over all players, at least 1.
  double payoff_scale() const {
    double scale = 1.0;
    for (double v : payoffs_) scale = std::max(scale, std::abs(v));
    return scale;
  }

  bool operator==(const NormalFormGame& other) const {
    return labels_ == other.labels_ && payoffs_ == other.payoffs_;
  }

 private:
  std::vector<std::vector<std::string>> labels_;
  std::vector<double> payoffs_;
  Layout layout_;
};

// A probability tensor over joint strategies.
class JointDistribution {
 public:
  JointDistribution(Shape shape, std::vector<double> probs)
      : layout_(std::move(shape)), probs_(std::move(probs)) {
    if (probs_.size() != layout_.size()) {
      throw ShapeError("distribution has " + std::to_string(probs_.size()) +
                       " entries, shape requires " +
                       std::to_string(layout_.size()));
    }
    double total = 0.0;
    for (double v : probs_) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw InvalidArgument("distribution entries must be finite and >= 0");
      }
      total += v;
    }
    if (std::abs(total - 1.0) > kDistributionSumTolerance) {
      throw InvalidArgument("distribution sums to " + std::to_string(total));
    }
  }

  static JointDistribution uniform(const Shape& shape) {
    Layout layout(shape);
    return JointDistribution(
        shape, std::vector<double>(layout.size(), 1.0 / layout.size()));
  }

  static JointDistribution point_mass(const Shape& shape, const JointIndex& at) {
    Layout layout(shape);
    std::vector<double> probs(layout.size(), 0.0);
    probs[layout.flatten(at)] = 1.0;
    return JointDistribution(shape, std::move(probs));
  }

  // Clips tiny negative round-off and renormalizes before validating.
  static JointDistribution from_unnormalized(const Shape& shape,
                                             std::vector<double> weights) {
    double total = 0.0;
    for (double& v : weights) {
      v = std::max(v, 0.0);
      total += v;
    }
    if (!(total > 0.0)) throw InvalidArgument("weights have no positive mass");
    for (double& v : weights) v /= total;
    return JointDistribution(shape, std::move(weights));
  }

  const Layout& layout() const { return layout_; }
  const Shape& shape() const { return layout_.shape(); }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t joint) const { return probs_[joint]; }
  double at(const JointIndex& index) const { return probs_[layout_.flatten(index)]; }
  const std::vector<double>& probs() const { return probs_; }

  double entropy() const {
    double h = 0.0;
    for (double v : probs_) {
      if (v > 0.0) h -= v * std::log(v);
    }
    return h;
  }

 private:
  Layout layout_;
  std::vector<double> probs_;
};

inline void check_same_shape(const NormalFormGame& game,
                             const JointDistribution& dist) {
  if (game.shape() != dist.shape()) {
    throw ShapeError("distribution shape does not match the game");
  }
}

inline void check_player(const Layout& layout, int player) {
  if (player < 0 || player >= layout.num_players()) {
    throw InvalidArgument("player index " + std::to_string(player) +
                          " out of range");
  }
}

// sigma(a_p): total mass on joints where `player` plays each strategy.
inline std::vector<double> marginal(const JointDistribution& dist, int player) {
  const Layout& layout = dist.layout();
  check_player(layout, player);
  std::vector<double> out(layout.num_strategies(player), 0.0);
  for (std::size_t j = 0; j < dist.size(); ++j) {
    out[layout.strategy_of(j, player)] += dist[j];
  }
  return out;
}

// sigma(a_{-p} | a_p) as a row-major tensor over the other players, or
// nullopt when the marginal of a_p does not exceed `zero_threshold`.
inline std::optional<std::vector<double>> conditional(
    const JointDistribution& dist, int player, std::size_t strategy,
    double zero_threshold = kDefaultZeroThreshold) {
  const Layout& layout = dist.layout();
  check_player(layout, player);
  if (strategy >= layout.num_strategies(player)) {
    throw InvalidArgument("strategy index out of range");
  }
  if (zero_threshold < 0.0) throw InvalidArgument("zero threshold must be >= 0");
  std::vector<double> slice(layout.others_size(player), 0.0);
  double mass = 0.0;
  for (std::size_t j = 0; j < dist.size(); ++j) {
    if (layout.strategy_of(j, player) != strategy) continue;
    slice[layout.others_index(j, player)] = dist[j];
    mass += dist[j];
  }
  if (!(mass > zero_threshold) || mass <= 0.0) return std::nullopt;
  for (double& v : slice) v /= mass;
  return slice;
}

inline double expected_payoff(const NormalFormGame& game,
                              const JointDistribution& dist, int player) {
  check_same_shape(game, dist);
  check_player(game.layout(), player);
  auto block = game.payoffs(player);
  double total = 0.0;
  for (std::size_t j = 0; j < dist.size(); ++j) total += block[j] * dist[j];
  return total;
}

// The factorized joint sigma(a) = prod_p sigma(a_p).
inline JointDistribution outer_product(
    std::span<const std::vector<double>> marginals) {
  Shape shape;
  for (const auto& m : marginals) shape.push_back(m.size());
  Layout layout(shape);
  std::vector<double> probs(layout.size(), 1.0);
  for (std::size_t j = 0; j < layout.size(); ++j) {
    for (int p = 0; p < layout.num_players(); ++p) {
      probs[j] *= marginals[p][layout.strategy_of(j, p)];
    }
  }
  return JointDistribution(std::move(shape), std::move(probs));
}

inline JointDistribution outer_product(
    const std::vector<std::vector<double>>& marginals) {
  return outer_product(std::span<const std::vector<double>>(marginals));
}

// True iff every player has the same strategy set and payoffs are invariant
// under any relabelling of player roles: G_p(a) = G_0(a with roles 0 and p
// swapped), and G_0 is invariant under permutations of a_1..a_{n-1}.
inline bool is_symmetric(const NormalFormGame& game,
                         double tolerance = kDefaultSymmetryTolerance) {
  const Layout& layout = game.layout();
  const int n = game.num_players();
  for (int p = 1; p < n; ++p) {
    if (game.num_strategies(p) != game.num_strategies(0)) return false;
  }
  auto swapped = [&](std::size_t joint, int p, int q) {
    const std::size_t sp = layout.strategy_of(joint, p);
    const std::size_t sq = layout.strategy_of(joint, q);
    return layout.with_strategy(layout.with_strategy(joint, p, sq), q, sp);
  };
  for (std::size_t j = 0; j < layout.size(); ++j) {
    for (int p = 1; p < n; ++p) {
      if (std::abs(game.payoff(p, j) - game.payoff(0, swapped(j, 0, p))) >
          tolerance) {
        return false;
      }
    }
    for (int p = 1; p + 1 < n; ++p) {
      if (std::abs(game.payoff(0, j) - game.payoff(0, swapped(j, p, p + 1))) >
          tolerance) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace eqrate

#endif  // EQRATE_GAME_HPP_
