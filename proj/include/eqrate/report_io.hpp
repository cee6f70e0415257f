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

#ifndef EQRATE_REPORT_IO_HPP_
#define EQRATE_REPORT_IO_HPP_

// JSON and CSV renderings of ratings, sweeps, solutions and mappings.

#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "eqrate/elimination.hpp"
#include "eqrate/rating.hpp"
#include "eqrate/solvers.hpp"
#include "json.hpp"

namespace eqrate {

// Shortest text that parses back to the same double.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline nlohmann::json distribution_to_json(const JointDistribution& dist) {
  return {{"shape", dist.shape()}, {"probs", dist.probs()}};
}

inline nlohmann::json rating_report_to_json(const RatingReport& report,
                                            double group_tol = -1.0) {
  nlohmann::json doc;
  if (!report.concept_name.empty()) doc["concept"] = report.concept_name;
  if (!report.selection_name.empty()) doc["selection"] = report.selection_name;
  if (!report.epsilon.empty()) doc["epsilon"] = report.epsilon;
  doc["converged"] = report.converged;
  const Ranking ranking = rank_from_ratings(report, group_tol);
  nlohmann::json players = nlohmann::json::array();
  for (std::size_t p = 0; p < report.ratings.size(); ++p) {
    nlohmann::json strategies = nlohmann::json::array();
    for (const auto& s : report.ratings[p]) {
      strategies.push_back({{"label", s.label},
                            {"rating", s.defined ? nlohmann::json(s.rating) : nlohmann::json()},
                            {"defined", s.defined},
                            {"tier", s.tier},
                            {"mass", s.mass}});
    }
    players.push_back({{"player", p},
                       {"expected_payoff", report.expected_payoffs[p]},
                       {"strategies", strategies},
                       {"ranking", ranking[p]}});
  }
  doc["players"] = players;
  if (report.joint) doc["joint"] = distribution_to_json(*report.joint);
  return doc;
}

inline std::string rating_report_to_csv(const RatingReport& report) {
  std::string out = "player,strategy,rating,defined,mass\n";
  for (std::size_t p = 0; p < report.ratings.size(); ++p) {
    for (const auto& s : report.ratings[p]) {
      out += std::to_string(p) + "," + s.label + "," +
             (s.defined ? format_double(s.rating) : "") + "," +
             (s.defined ? "true" : "false") + "," + format_double(s.mass) + "\n";
    }
  }
  return out;
}

inline std::string sweep_to_csv(const std::vector<SweepPoint>& points,
                                const NormalFormGame& game) {
  std::string out = "rho,player,strategy,mass,rating,converged\n";
  for (const auto& pt : points) {
    for (int p = 0; p < game.num_players(); ++p) {
      for (std::size_t a = 0; a < game.num_strategies(p); ++a) {
        std::string mass;
        std::string rating;
        if (pt.report) {
          const StrategyRating& s = pt.report->ratings[p][a];
          mass = format_double(s.mass);
          if (s.defined) rating = format_double(s.rating);
        }
        out += format_double(pt.rho) + "," + std::to_string(p) + "," +
               game.labels(p)[a] + "," + mass + "," + rating + "," +
               (pt.converged && !pt.failed ? "true" : "false") + "\n";
      }
    }
  }
  return out;
}

inline nlohmann::json sweep_to_json(const std::vector<SweepPoint>& points) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& pt : points) {
    nlohmann::json row = {{"rho", pt.rho},
                          {"epsilon", pt.epsilon},
                          {"clamped", pt.clamped},
                          {"failed", pt.failed},
                          {"converged", pt.converged}};
    if (pt.failed) row["error"] = pt.error;
    if (pt.report) {
      row["entropy"] = pt.entropy;
      row["report"] = rating_report_to_json(*pt.report);
    }
    rows.push_back(std::move(row));
  }
  return {{"points", rows}};
}

inline nlohmann::json solution_to_json(const EquilibriumSolution& sol) {
  return {{"joint", distribution_to_json(sol.dist)},
          {"epsilon", sol.epsilon},
          {"achieved_violation", sol.achieved_violation},
          {"objective_value", sol.objective_value},
          {"dual_variables", sol.dual_variables},
          {"iterations", sol.iterations},
          {"converged", sol.converged}};
}

inline std::string solution_to_csv(const EquilibriumSolution& sol,
                                   const NormalFormGame& game) {
  std::string out;
  for (int p = 0; p < game.num_players(); ++p) out += "s" + std::to_string(p) + ",";
  out += "probability\n";
  const Layout& layout = game.layout();
  for (std::size_t j = 0; j < layout.size(); ++j) {
    const JointIndex idx = layout.unflatten(j);
    for (int p = 0; p < game.num_players(); ++p) out += game.labels(p)[idx[p]] + ",";
    out += format_double(sol.dist[j]) + "\n";
  }
  return out;
}

inline nlohmann::json mapping_to_json(const EliminationMapping& mapping,
                                      const NormalFormGame& original,
                                      const NormalFormGame& reduced) {
  nlohmann::json players = nlohmann::json::array();
  for (int p = 0; p < original.num_players(); ++p) {
    nlohmann::json merged = nlohmann::json::object();
    for (std::size_t a = 0; a < original.num_strategies(p); ++a) {
      merged[original.labels(p)[a]] = reduced.labels(p)[mapping.reduced_index[p][a]];
    }
    players.push_back({{"reduced_index", mapping.reduced_index[p]},
                       {"representative", mapping.representative[p]},
                       {"counts", mapping.counts[p]},
                       {"merged_into", merged}});
  }
  return {{"players", players}};
}

}  // namespace eqrate

#endif  // EQRATE_REPORT_IO_HPP_
