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

#ifndef EQRATE_EQRATE_HPP_
#define EQRATE_EQRATE_HPP_

#include "eqrate/constraints.hpp"
#include "eqrate/egta.hpp"
#include "eqrate/elimination.hpp"
#include "eqrate/errors.hpp"
#include "eqrate/game.hpp"
#include "eqrate/game_io.hpp"
#include "eqrate/gibbs_dual.hpp"
#include "eqrate/linprog.hpp"
#include "eqrate/polytope.hpp"
#include "eqrate/rating.hpp"
#include "eqrate/report_io.hpp"
#include "eqrate/solvers.hpp"

#endif  // EQRATE_EQRATE_HPP_
