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

#ifndef EQRATE_ELIMINATION_HPP_
#define EQRATE_ELIMINATION_HPP_

// Repeated-strategy handling: exact merging of payoff-identical strategies,
// similarity matrices for soft elimination, and the joint objective weights
// derived from them.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "eqrate/game.hpp"

namespace eqrate {

struct EliminationMapping {
  // reduced_index[p][a]: strategy of the reduced game that a maps to.
  std::vector<std::vector<std::size_t>> reduced_index;
  // representative[p][a]: original index of the strategy a was merged into.
  std::vector<std::vector<std::size_t>> representative;
  // counts[p][r]: number of original strategies merged into reduced r.
  std::vector<std::vector<std::size_t>> counts;

  Shape original_shape() const {
    Shape s;
    for (const auto& r : reduced_index) s.push_back(r.size());
    return s;
  }
  Shape reduced_shape() const {
    Shape s;
    for (const auto& c : counts) s.push_back(c.size());
    return s;
  }
};

// Payoffs of every player when `player` plays `strategy`, ordered by player
// then by the row-major index of the other players' strategies.
inline std::vector<double> strategy_slice(const NormalFormGame& game, int player,
                                          std::size_t strategy) {
  const Layout& layout = game.layout();
  std::vector<double> out(game.num_players() * layout.others_size(player));
  for (std::size_t j = 0; j < layout.size(); ++j) {
    if (layout.strategy_of(j, player) != strategy) continue;
    const std::size_t k = layout.others_index(j, player);
    for (int q = 0; q < game.num_players(); ++q) {
      out[q * layout.others_size(player) + k] = game.payoff(q, j);
    }
  }
  return out;
}

inline double payoff_range(const NormalFormGame& game) {
  double r = 0.0;
  for (int p = 0; p < game.num_players(); ++p) {
    r = std::max(r, game.max_payoff(p) - game.min_payoff(p));
  }
  return r;
}

inline double default_duplicate_tol(const NormalFormGame& game) {
  return 1e-9 * payoff_range(game);
}

// Merges strategies whose slices agree within `tol` (max-norm) into their
// first occurrence.
inline std::pair<NormalFormGame, EliminationMapping> eliminate_exact_duplicates(
    const NormalFormGame& game, std::optional<double> tol = std::nullopt) {
  const double t = tol.value_or(default_duplicate_tol(game));
  if (!(t >= 0.0)) throw InvalidArgument("duplicate tolerance must be >= 0");
  const int n = game.num_players();
  EliminationMapping mapping;
  std::vector<std::vector<std::size_t>> kept(n);
  for (int p = 0; p < n; ++p) {
    const std::size_t s = game.num_strategies(p);
    std::vector<std::vector<double>> slices;
    for (std::size_t a = 0; a < s; ++a) slices.push_back(strategy_slice(game, p, a));
    std::vector<std::size_t> reduced(s);
    std::vector<std::size_t> rep(s);
    std::vector<std::size_t> counts;
    for (std::size_t a = 0; a < s; ++a) {
      std::optional<std::size_t> match;
      for (std::size_t r = 0; r < kept[p].size() && !match; ++r) {
        const auto& ref = slices[kept[p][r]];
        bool same = true;
        for (std::size_t i = 0; i < ref.size() && same; ++i) {
          same = std::abs(ref[i] - slices[a][i]) <= t;
        }
        if (same) match = r;
      }
      if (match) {
        reduced[a] = *match;
        rep[a] = kept[p][*match];
        ++counts[*match];
      } else {
        reduced[a] = kept[p].size();
        rep[a] = a;
        kept[p].push_back(a);
        counts.push_back(1);
      }
    }
    mapping.reduced_index.push_back(std::move(reduced));
    mapping.representative.push_back(std::move(rep));
    mapping.counts.push_back(std::move(counts));
  }
  std::vector<std::vector<std::string>> labels(n);
  for (int p = 0; p < n; ++p) {
    for (std::size_t a : kept[p]) labels[p].push_back(game.labels(p)[a]);
  }
  NormalFormGame reduced = NormalFormGame::from_function(
      std::move(labels), [&](int p, const JointIndex& sub) {
        JointIndex full(sub.size());
        for (std::size_t q = 0; q < sub.size(); ++q) full[q] = kept[q][sub[q]];
        return game.payoff(p, full);
      });
  return {std::move(reduced), std::move(mapping)};
}

// Lifts a distribution on the reduced game back to the original game,
// splitting each reduced joint's mass equally over its preimages.
inline JointDistribution redistribute_mass(const JointDistribution& reduced,
                                           const EliminationMapping& mapping) {
  if (reduced.shape() != mapping.reduced_shape()) {
    throw ShapeError("distribution does not match the reduced game of the mapping");
  }
  const Layout original(mapping.original_shape());
  std::vector<double> probs(original.size());
  for (std::size_t j = 0; j < original.size(); ++j) {
    const JointIndex idx = original.unflatten(j);
    JointIndex sub(idx.size());
    double copies = 1.0;
    for (std::size_t p = 0; p < idx.size(); ++p) {
      sub[p] = mapping.reduced_index[p][idx[p]];
      copies *= static_cast<double>(mapping.counts[p][sub[p]]);
    }
    probs[j] = reduced.at(sub) / copies;
  }
  return JointDistribution::from_unnormalized(original.shape(), std::move(probs));
}

using SimilarityMatrix = Eigen::MatrixXd;
using SimilarityKernel =
    std::function<double(std::span<const double>, std::span<const double>)>;

// 1 when the slices agree within tol in max-norm, else 0.
inline SimilarityKernel threshold_kernel(double tol) {
  return [tol](std::span<const double> a, std::span<const double> b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (std::abs(a[i] - b[i]) > tol) return 0.0;
    }
    return 1.0;
  };
}

// exp(-|a - b|^2 / (2 bandwidth^2)) with the Euclidean norm.
inline SimilarityKernel gaussian_kernel(double bandwidth) {
  if (!(bandwidth > 0.0)) throw InvalidArgument("bandwidth must be positive");
  return [bandwidth](std::span<const double> a, std::span<const double> b) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d2 += (a[i] - b[i]) * (a[i] - b[i]);
    return std::exp(-d2 / (2.0 * bandwidth * bandwidth));
  };
}

inline SimilarityMatrix similarity_matrix(const NormalFormGame& game, int player,
                                          const SimilarityKernel& kernel) {
  check_player(game.layout(), player);
  const std::size_t s = game.num_strategies(player);
  std::vector<std::vector<double>> slices;
  for (std::size_t a = 0; a < s; ++a) slices.push_back(strategy_slice(game, player, a));
  SimilarityMatrix out = SimilarityMatrix::Identity(s, s);
  for (std::size_t a = 0; a < s; ++a) {
    for (std::size_t b = 0; b < s; ++b) {
      if (a == b) continue;
      const double v = kernel(slices[a], slices[b]);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw InvalidArgument("similarity kernel returned a value outside [0, 1]");
      }
      out(a, b) = v;
    }
  }
  return out;
}

// s(a) = prod_p s_p(a_p) with s_p the row sums of S_p; row-major over joints,
// ready for SolveConfig::weights.
inline std::vector<double> repeat_weights(const std::vector<SimilarityMatrix>& similarity) {
  Shape shape;
  std::vector<Eigen::VectorXd> sums;
  for (const auto& s : similarity) {
    if (s.rows() != s.cols() || s.rows() == 0) {
      throw ShapeError("similarity matrices must be square and non-empty");
    }
    shape.push_back(static_cast<std::size_t>(s.rows()));
    sums.push_back(s.rowwise().sum());
  }
  const Layout layout(shape);
  std::vector<double> out(layout.size(), 1.0);
  for (std::size_t j = 0; j < layout.size(); ++j) {
    for (std::size_t p = 0; p < shape.size(); ++p) {
      out[j] *= sums[p](static_cast<Eigen::Index>(layout.strategy_of(j, static_cast<int>(p))));
    }
  }
  return out;
}

}  // namespace eqrate

#endif  // EQRATE_ELIMINATION_HPP_
