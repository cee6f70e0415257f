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

// Writes a random game document with payoffs uniform in [-1, 1].
//
//   random_game --seed 7 --shape 3,3 --kind zero-sum

#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eqrate/game_io.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Random normal-form game generator"};
  std::uint64_t seed = 0;
  std::vector<std::size_t> shape = {3, 3};
  std::string kind = "general";
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.add_option("--shape", shape, "strategies per player")->delimiter(',');
  app.add_option("--kind", kind, "payoff structure")
      ->check(CLI::IsMember({"general", "zero-sum", "symmetric"}))
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  if (kind != "general" && (shape.size() != 2 || (kind == "symmetric" && shape[0] != shape[1]))) {
    std::cerr << "--kind " << kind << " needs two players"
              << (kind == "symmetric" ? " with equal strategy counts" : "") << "\n";
    return 1;
  }
  const eqrate::Layout layout(shape);
  std::vector<double> payoffs(layout.size() * shape.size());
  for (std::size_t j = 0; j < layout.size(); ++j) payoffs[j] = u(rng);
  for (std::size_t p = 1; p < shape.size(); ++p) {
    for (std::size_t j = 0; j < layout.size(); ++j) {
      double v = u(rng);
      if (kind == "zero-sum") v = -payoffs[j];
      if (kind == "symmetric") {
        const std::size_t a = layout.strategy_of(j, 0);
        const std::size_t b = layout.strategy_of(j, 1);
        v = payoffs[layout.flatten({b, a})];
      }
      payoffs[p * layout.size() + j] = v;
    }
  }
  std::cout << eqrate::dump_game(eqrate::NormalFormGame::from_payoffs(shape, payoffs));
  return 0;
}
