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

// Overlapping term sets are handled by giving each (variable, term) pair its
// own copy, running the disjoint solver on the copies, and reporting twice the
// smallest copy of each original variable.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "lqcover/model.hpp"
#include "lqcover/solver.hpp"

namespace lqcover {

class DuplicationMap {
 public:
  struct Copy {
    std::size_t original = 0;
    std::size_t term = 0;  // GroupIndex::kUncosted for passthrough copies
  };

  DuplicationMap() = default;

  std::size_t original_size() const { return copies_of_.size(); }
  std::size_t copy_count() const { return copies_.size(); }
  /// Copy ids of original variable i, ordered by term id.
  const std::vector<std::size_t>& copies_of(std::size_t i) const {
    return copies_of_[i];
  }
  const Copy& copy(std::size_t c) const { return copies_[c]; }
  bool identity() const { return identity_; }
  /// Largest number of copies of any variable.
  std::size_t max_copies() const;

 private:
  friend std::pair<InstanceHeader, DuplicationMap> duplicate(
      const InstanceHeader&);

  std::vector<std::vector<std::size_t>> copies_of_;
  std::vector<Copy> copies_;
  bool identity_ = false;
};

/// One copy per (variable, term containing it); variables in no term keep a
/// single passthrough copy. A header whose sets are already disjoint maps to
/// itself with the identity map.
std::pair<InstanceHeader, DuplicationMap> duplicate(const InstanceHeader& header);

/// x_bar_i = 2 * min over the copies of i.
std::vector<double> project_solution(std::span<const double> copies,
                                     const DuplicationMap& map);

struct ReductionTrace {
  std::size_t inner_iterations = 0;
  std::vector<StepTrace> steps;
};

/// Drives an OnlineSolver on the duplicated instance. For every original row
/// the loop repeatedly hands the solver the row restricted to the currently
/// smallest copies until sum_i a_i min_e x_i^(e) >= 1/2.
class ReducedSolver {
 public:
  explicit ReducedSolver(const InstanceHeader& header, SolverConfig config = {});

  ReductionTrace process_general_constraint(const CoveringConstraint& row);

  /// min_e x_i^(e) for every original variable.
  std::vector<double> min_copies() const;
  /// Original-space solution. On disjoint input this is the solver's x
  /// itself; otherwise 2 * min_copies().
  std::vector<double> solution() const;
  /// Factor between the solver's duplicated objective and the bound on
  /// f(solution()): 1 on the identity path, 2 otherwise.
  double projection_factor() const { return map_.identity() ? 1.0 : 2.0; }

  const OnlineSolver& solver() const { return solver_; }
  const DuplicationMap& map() const { return map_; }
  const InstanceHeader& original_header() const { return original_; }
  const std::vector<CoveringConstraint>& original_rows() const { return rows_; }
  /// ceil(1.1 * 2 r n)
  std::size_t iteration_bound() const { return iteration_bound_; }

 private:
  InstanceHeader original_;
  DuplicationMap map_;
  OnlineSolver solver_;
  std::vector<CoveringConstraint> rows_;
  std::size_t iteration_bound_ = 0;
};

}  // namespace lqcover
