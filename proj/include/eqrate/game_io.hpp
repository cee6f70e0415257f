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

#ifndef EQRATE_GAME_IO_HPP_
#define EQRATE_GAME_IO_HPP_

// Game documents:
//
//   { "players": n,
//     "strategies": [[labels of player 0], ...],
//     "shape": [s_0, ..., s_{n-1}],
//     "payoffs": [n * prod(s) reals, player-major, row-major joints] }
//
// "strategies" may be omitted (labels default to "0", "1", ...). Payoff
// entries may also be strings such as "1.5" or "NaN"; non-finite values are
// rejected.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "eqrate/game.hpp"
#include "json.hpp"

namespace eqrate {

namespace internal {

inline double payoff_entry(const nlohmann::json& v, std::size_t i) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string text = v.get<std::string>();
    char* end = nullptr;
    const double parsed = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0') {
      throw ParseError("payoff entry " + std::to_string(i) +
                       " is not a number: \"" + text + "\"");
    }
    return parsed;
  }
  throw ParseError("payoff entry " + std::to_string(i) + " is not a number");
}

}  // namespace internal

inline NormalFormGame game_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("game document must be a JSON object");
  for (const char* key : {"players", "shape", "payoffs"}) {
    if (!doc.contains(key)) {
      throw ParseError(std::string("game document is missing \"") + key + "\"");
    }
  }
  if (!doc["players"].is_number_integer() || doc["players"].get<long>() < 1) {
    throw ParseError("\"players\" must be a positive integer");
  }
  const auto n = doc["players"].get<std::size_t>();
  if (!doc["shape"].is_array()) throw ParseError("\"shape\" must be an array");
  Shape shape;
  for (const auto& s : doc["shape"]) {
    if (!s.is_number_integer() || s.get<long>() < 1) {
      throw ParseError("\"shape\" entries must be positive integers");
    }
    shape.push_back(s.get<std::size_t>());
  }
  if (shape.size() != n) {
    throw ShapeError("\"shape\" has " + std::to_string(shape.size()) +
                     " entries for " + std::to_string(n) + " players");
  }
  std::vector<std::vector<std::string>> labels;
  if (doc.contains("strategies")) {
    if (!doc["strategies"].is_array()) {
      throw ParseError("\"strategies\" must be an array of label lists");
    }
    for (const auto& list : doc["strategies"]) {
      if (!list.is_array()) throw ParseError("label list must be an array");
      std::vector<std::string> player_labels;
      for (const auto& l : list) {
        if (!l.is_string()) throw ParseError("strategy labels must be strings");
        player_labels.push_back(l.get<std::string>());
      }
      labels.push_back(std::move(player_labels));
    }
    if (labels.size() != n) {
      throw ShapeError("\"strategies\" lists " + std::to_string(labels.size()) +
                       " players, expected " + std::to_string(n));
    }
    for (std::size_t p = 0; p < n; ++p) {
      if (labels[p].size() != shape[p]) {
        throw ShapeError("player " + std::to_string(p) + " has " +
                         std::to_string(labels[p].size()) +
                         " labels but shape says " + std::to_string(shape[p]));
      }
    }
  } else {
    labels = default_labels(shape);
  }
  if (!doc["payoffs"].is_array()) throw ParseError("\"payoffs\" must be an array");
  std::vector<double> payoffs;
  payoffs.reserve(doc["payoffs"].size());
  std::size_t i = 0;
  for (const auto& v : doc["payoffs"]) payoffs.push_back(internal::payoff_entry(v, i++));
  return NormalFormGame(std::move(labels), std::move(payoffs));
}

// Accepts // and /* */ comments, so documents can carry a license header.
inline NormalFormGame load_game(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document.begin(), document.end(), nullptr, true, true);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed game document: ") + e.what());
  }
  return game_from_json(doc);
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline NormalFormGame load_game_file(const std::filesystem::path& path) {
  return load_game(read_text_file(path));
}

inline nlohmann::json game_to_json(const NormalFormGame& game) {
  nlohmann::json doc;
  doc["players"] = game.num_players();
  doc["strategies"] = game.all_labels();
  doc["shape"] = game.shape();
  doc["payoffs"] = game.payoff_tensor();
  return doc;
}

inline std::string dump_game(const NormalFormGame& game) {
  return game_to_json(game).dump() + "\n";
}

}  // namespace eqrate

#endif  // EQRATE_GAME_IO_HPP_
