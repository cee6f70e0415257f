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

#ifndef EQRATE_EGTA_HPP_
#define EQRATE_EGTA_HPP_

// Empirical games from match records.
//
// Match CSV: a header naming at least `home,away,result` (result is H, A or
// D), optionally `home_sets,away_sets`, then one fixture per line.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eqrate/game.hpp"
#include "eqrate/game_io.hpp"

namespace eqrate {

enum class Outcome { kHomeWin, kAwayWin, kDraw };

struct MatchRecord {
  std::string home;
  std::string away;
  Outcome outcome = Outcome::kDraw;
  std::optional<double> home_sets;
  std::optional<double> away_sets;
};

struct ScoringRule {
  double win_points = 3.0;
  double draw_points = 1.0;
  double loss_points = 0.0;
};

enum class DrawHandling { kHalfWin, kDiscard };

struct WinProbOptions {
  DrawHandling draws = DrawHandling::kHalfWin;
};

struct LocationOptions {
  // Payoff of the location player when the fixture it picked is drawn.
  double location_draw_payoff = 0.0;
  // Payoff of each club for a draw.
  double club_draw_payoff = 0.5;
};

namespace internal {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace internal

inline std::vector<MatchRecord> parse_match_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  std::map<std::string, std::size_t> column;
  bool have_header = false;
  std::vector<MatchRecord> records;
  auto fail = [&](const std::string& what) {
    throw ParseError("line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    const std::string trimmed = internal::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const std::vector<std::string> fields = internal::split_csv_line(line);
    if (!have_header) {
      for (std::size_t i = 0; i < fields.size(); ++i) column[fields[i]] = i;
      for (const char* required : {"home", "away", "result"}) {
        if (!column.count(required)) fail(std::string("header lacks column \"") + required + "\"");
      }
      have_header = true;
      continue;
    }
    if (fields.size() != column.size()) {
      fail("expected " + std::to_string(column.size()) + " fields, found " +
           std::to_string(fields.size()));
    }
    MatchRecord rec;
    rec.home = fields[column["home"]];
    rec.away = fields[column["away"]];
    if (rec.home.empty() || rec.away.empty()) fail("empty club label");
    if (rec.home == rec.away) fail("club \"" + rec.home + "\" plays itself");
    const std::string& result = fields[column["result"]];
    if (result == "H") {
      rec.outcome = Outcome::kHomeWin;
    } else if (result == "A") {
      rec.outcome = Outcome::kAwayWin;
    } else if (result == "D") {
      rec.outcome = Outcome::kDraw;
    } else {
      fail("result must be H, A or D, found \"" + result + "\"");
    }
    for (const char* name : {"home_sets", "away_sets"}) {
      if (!column.count(name)) continue;
      const std::string& v = fields[column[name]];
      if (v.empty()) continue;
      char* end = nullptr;
      const double x = std::strtod(v.c_str(), &end);
      if (end == v.c_str() || *end != '\0') fail(std::string(name) + " is not a number");
      (std::string_view(name) == "home_sets" ? rec.home_sets : rec.away_sets) = x;
    }
    records.push_back(std::move(rec));
  }
  if (records.empty()) throw MissingDataError("no match records (0 records read)");
  return records;
}

inline std::vector<MatchRecord> read_match_csv(const std::filesystem::path& path) {
  return parse_match_csv(read_text_file(path));
}

namespace internal {

// Mean score of each (home, away) fixture under a per-outcome score for the
// home and the away side.
struct VenueTable {
  std::vector<std::string> clubs;
  std::map<std::string, std::size_t> index;
  // sum and count per (home, away).
  std::vector<std::vector<double>> home_sum;
  std::vector<std::vector<double>> away_sum;
  std::vector<std::vector<double>> count;

  std::size_t size() const { return clubs.size(); }
  bool has(std::size_t h, std::size_t a) const { return count[h][a] > 0.0; }
  double home_mean(std::size_t h, std::size_t a) const { return home_sum[h][a] / count[h][a]; }
  double away_mean(std::size_t h, std::size_t a) const { return away_sum[h][a] / count[h][a]; }
};

inline std::vector<std::string> club_labels(const std::vector<MatchRecord>& records) {
  std::set<std::string> s;
  for (const auto& r : records) {
    s.insert(r.home);
    s.insert(r.away);
  }
  return {s.begin(), s.end()};
}

// score(outcome) -> (home score, away score); nullopt drops the record.
template <typename Score>
VenueTable venue_table(const std::vector<MatchRecord>& records,
                       const std::vector<std::string>& clubs, Score score) {
  VenueTable t;
  t.clubs = clubs;
  for (std::size_t i = 0; i < clubs.size(); ++i) t.index[clubs[i]] = i;
  const std::size_t c = clubs.size();
  t.home_sum.assign(c, std::vector<double>(c, 0.0));
  t.away_sum = t.home_sum;
  t.count = t.home_sum;
  for (const auto& r : records) {
    if (r.home == r.away) throw InvalidArgument("club \"" + r.home + "\" plays itself");
    const std::optional<std::pair<double, double>> s = score(r.outcome);
    if (!s) continue;
    const std::size_t h = t.index.at(r.home);
    const std::size_t a = t.index.at(r.away);
    t.home_sum[h][a] += s->first;
    t.away_sum[h][a] += s->second;
    t.count[h][a] += 1.0;
  }
  return t;
}

inline void require_pairs(const std::vector<MatchRecord>& records,
                          const std::vector<std::string>& clubs, bool ordered) {
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& r : records) {
    seen.insert({r.home, r.away});
    if (!ordered) seen.insert({r.away, r.home});
  }
  std::string missing;
  std::size_t n_missing = 0;
  for (const auto& h : clubs) {
    for (const auto& a : clubs) {
      if (h == a || (!ordered && h > a) || seen.count({h, a})) continue;
      ++n_missing;
      if (n_missing <= 50) missing += (missing.empty() ? "" : ", ") + h + (ordered ? " @ " : " vs ") + a;
    }
  }
  if (n_missing > 0) {
    if (n_missing > 50) missing += ", ...";
    throw MissingDataError(std::to_string(n_missing) + " pairings have no records: " +
                           missing);
  }
}

// Head-to-head value of i against j: the mean of the two venue means, or the
// one venue that has data.
inline double head_to_head(const VenueTable& t, std::size_t i, std::size_t j,
                           double fallback) {
  double total = 0.0;
  int venues = 0;
  if (t.has(i, j)) {
    total += t.home_mean(i, j);
    ++venues;
  }
  if (t.has(j, i)) {
    total += t.away_mean(j, i);
    ++venues;
  }
  return venues ? total / venues : fallback;
}

inline std::vector<std::vector<double>> win_matrix(const std::vector<MatchRecord>& records,
                                                   const std::vector<std::string>& clubs,
                                                   DrawHandling draws) {
  const VenueTable t = venue_table(
      records, clubs, [&](Outcome o) -> std::optional<std::pair<double, double>> {
        switch (o) {
          case Outcome::kHomeWin: return std::pair{1.0, 0.0};
          case Outcome::kAwayWin: return std::pair{0.0, 1.0};
          case Outcome::kDraw:
            if (draws == DrawHandling::kDiscard) return std::nullopt;
            return std::pair{0.5, 0.5};
        }
        return std::nullopt;
      });
  const std::size_t c = clubs.size();
  std::vector<std::vector<double>> g(c, std::vector<double>(c, 0.5));
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      if (i != j) g[i][j] = head_to_head(t, i, j, 0.5);
    }
  }
  return g;
}

// Clubs by descending average win probability, ties (to 1e-12) by label.
inline std::vector<std::size_t> strength_order(const std::vector<std::vector<double>>& g,
                                               const std::vector<std::string>& clubs) {
  std::vector<double> mean(clubs.size(), 0.0);
  for (std::size_t i = 0; i < clubs.size(); ++i) {
    for (double v : g[i]) mean[i] += v / static_cast<double>(clubs.size());
    // Quantized so that ties in exact arithmetic stay ties after rounding.
    mean[i] = std::round(mean[i] * 1e12) / 1e12;
  }
  std::vector<std::size_t> order(clubs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (mean[a] != mean[b]) return mean[a] > mean[b];
    return clubs[a] < clubs[b];
  });
  return order;
}

}  // namespace internal

// Symmetric constant-sum game with G_1(i, j) the probability that i beats j
// and G_2 = 1 - G_1 = G_1^T. Strategies are sorted by average win probability.
inline NormalFormGame build_winprob_game(const std::vector<MatchRecord>& records,
                                         const WinProbOptions& options = {}) {
  if (records.empty()) throw MissingDataError("no match records (0 records read)");
  const std::vector<std::string> clubs = internal::club_labels(records);
  internal::require_pairs(records, clubs, false);
  const auto g = internal::win_matrix(records, clubs, options.draws);
  const auto order = internal::strength_order(g, clubs);
  std::vector<std::string> labels;
  for (std::size_t i : order) labels.push_back(clubs[i]);
  return NormalFormGame::from_function({labels, labels}, [&](int p, const JointIndex& a) {
    const double v = g[order[a[0]]][order[a[1]]];
    return p == 0 ? v : 1.0 - v;
  });
}

// Two-player general-sum game of average points per head-to-head. Clubs are
// ordered as in build_winprob_game.
inline NormalFormGame build_points_game(const std::vector<MatchRecord>& records,
                                        const ScoringRule& rule = {}) {
  if (!(rule.win_points >= rule.draw_points && rule.draw_points >= rule.loss_points)) {
    throw InvalidArgument("scoring rule must satisfy win >= draw >= loss");
  }
  if (records.empty()) throw MissingDataError("no match records (0 records read)");
  const std::vector<std::string> clubs = internal::club_labels(records);
  internal::require_pairs(records, clubs, false);
  const internal::VenueTable t = internal::venue_table(
      records, clubs, [&](Outcome o) -> std::optional<std::pair<double, double>> {
        switch (o) {
          case Outcome::kHomeWin: return std::pair{rule.win_points, rule.loss_points};
          case Outcome::kAwayWin: return std::pair{rule.loss_points, rule.win_points};
          case Outcome::kDraw: return std::pair{rule.draw_points, rule.draw_points};
        }
        return std::nullopt;
      });
  const std::size_t c = clubs.size();
  std::vector<std::vector<double>> pts(c, std::vector<double>(c, rule.draw_points));
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      if (i != j) pts[i][j] = internal::head_to_head(t, i, j, rule.draw_points);
    }
  }
  const auto order =
      internal::strength_order(internal::win_matrix(records, clubs, DrawHandling::kHalfWin), clubs);
  std::vector<std::string> labels;
  for (std::size_t i : order) labels.push_back(clubs[i]);
  return NormalFormGame::from_function({labels, labels}, [&](int p, const JointIndex& a) {
    const std::size_t i = order[a[0]];
    const std::size_t j = order[a[1]];
    return p == 0 ? pts[i][j] : pts[j][i];
  });
}

// Three players: a location player choosing Home or Away, the home club and
// the away club. The location player scores when the side it picked wins;
// clubs score their own win probability at that venue. Club-vs-self joints
// pay 0 to everyone.
inline NormalFormGame build_location_game(const std::vector<MatchRecord>& records,
                                          const LocationOptions& options = {}) {
  if (records.empty()) throw MissingDataError("no match records (0 records read)");
  const std::vector<std::string> clubs = internal::club_labels(records);
  internal::require_pairs(records, clubs, true);
  struct Rates {
    double home = 0.0;
    double away = 0.0;
    double draw = 0.0;
  };
  const internal::VenueTable wins = internal::venue_table(
      records, clubs, [](Outcome o) -> std::optional<std::pair<double, double>> {
        if (o == Outcome::kHomeWin) return std::pair{1.0, 0.0};
        if (o == Outcome::kAwayWin) return std::pair{0.0, 1.0};
        return std::pair{0.0, 0.0};
      });
  const auto order =
      internal::strength_order(internal::win_matrix(records, clubs, DrawHandling::kHalfWin), clubs);
  std::vector<std::string> labels;
  for (std::size_t i : order) labels.push_back(clubs[i]);
  return NormalFormGame::from_function(
      {{"Home", "Away"}, labels, labels}, [&](int p, const JointIndex& a) {
        const std::size_t h = order[a[1]];
        const std::size_t w = order[a[2]];
        if (h == w) return 0.0;
        Rates r;
        r.home = wins.home_mean(h, w);
        r.away = wins.away_mean(h, w);
        r.draw = 1.0 - r.home - r.away;
        switch (p) {
          case 0:
            return (a[0] == 0 ? r.home : r.away) + options.location_draw_payoff * r.draw;
          case 1: return r.home + options.club_draw_payoff * r.draw;
          default: return r.away + options.club_draw_payoff * r.draw;
        }
      });
}

}  // namespace eqrate

#endif  // EQRATE_EGTA_HPP_
