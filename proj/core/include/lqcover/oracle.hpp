// Copyright 2026 The lqcover Authors
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

#pragma once

// Offline ground truth for small instances. Independent of the online
// solver: it only shares the objective evaluation in model.hpp.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "lqcover/model.hpp"

namespace lqcover {

enum class OracleMode { kGrid, kSubgradient };

OracleMode parse_oracle_mode(std::string_view name);
std::string_view to_string(OracleMode mode);

struct OracleOptions {
  OracleMode mode = OracleMode::kGrid;
  // Grid spacing of the final refinement is resolution * 1e-2.
  double resolution = 1e-3;
  std::size_t iterations = 100'000;  // subgradient mode
  std::size_t max_grid_points = 100'000;
};

struct OracleResult {
  double value = 0.0;
  std::vector<double> argmin;
  std::size_t evaluations = 0;
};

/// Grid mode: one variable is eliminated exactly (set to the smallest value
/// that satisfies its rows), the others are searched on a grid over
/// [0, 1/a_min] that is then repeatedly refined around the incumbent.
/// Limited to at most 6 costed variables that appear in rows.
///
/// Subgradient mode: projected subgradient descent with step a0/sqrt(t);
/// feasibility is restored after every step by scaling violated rows up.
///
/// Throws kInfeasible when a row is empty.
OracleResult offline_oracle(const InstanceHeader& header,
                            std::span<const CoveringConstraint> rows,
                            const OracleOptions& options = {});

/// A subgradient of f at x (zero on groups whose restriction is zero).
std::vector<double> objective_subgradient(const InstanceHeader& header,
                                          std::span<const double> x);

}  // namespace lqcover
