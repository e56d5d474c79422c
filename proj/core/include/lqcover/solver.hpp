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

// Online primal-dual engine. For every arriving row a_k the solver runs the
// coupled process
//
//   dx_i/dtau = (a_ki x_i + 1/d) / grad_i f(x)   for i with a_ki > 0
//   dy_k/dtau = 1
//
// until a_k . x >= 1, then folds y_k into mu = A^T y. The continuous process
// is integrated with explicit Euler steps (gradient frozen per step) whose
// size is capped so no variable grows by more than a factor 1 + eta and the
// row's left-hand side moves by at most eta per step. Rows touching only
// q = 1 terms are integrated in closed form.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lqcover/error.hpp"
#include "lqcover/model.hpp"
#include "lqcover/power_sum.hpp"

namespace lqcover {

struct SolverConfig {
  // Initial value of every costed variable. Unset means default_delta().
  std::optional<double> delta;
  double eta = 1e-3;
  // Absolute tolerance on a_k . x - 1 at termination.
  double lhs_tol = 1e-9;
  std::size_t max_steps_per_constraint = 50'000'000;
  // Integrate rows whose variables all sit in q = 1 terms exactly.
  bool exact_linear_fast_path = true;

  void validate() const;
};

/// 1e-6 / (d^2 * a_max * n)
double default_delta(const InstanceHeader& header);

struct StepTrace {
  std::size_t row = 0;
  std::size_t steps = 0;
  double tau = 0.0;  // equals the row's final dual value y_k
  double lhs = 0.0;  // a_k . x at termination
  bool already_satisfied = false;
  bool saturated_uncosted = false;
  bool fast_path = false;
  bool overshoot = false;  // lhs - 1 > lhs_tol
};

class IntegrationFailure : public Error {
 public:
  IntegrationFailure(const std::string& what, StepTrace partial)
      : Error(ErrorCode::kIntegrationFailure,
              "integration-failure: " + what),
        partial_(partial) {}

  const StepTrace& partial() const { return partial_; }

 private:
  StepTrace partial_;
};

struct SolverState {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> mu;
  std::vector<PowerSum> power_sums;  // one per term
  double primal_value = 0.0;         // f(x) - f_offset
  double dual_value = 0.0;           // sum_k y_k
  double f_offset = 0.0;             // f(delta * 1)
  std::vector<StepTrace> step_log;
  std::vector<CoveringConstraint> rows;  // the processed rows of A
  std::size_t saturation_events = 0;
  std::size_t overshoot_events = 0;
};

class OnlineSolver {
 public:
  /// Requires pairwise-disjoint term sets (see disjoint_reduction for the
  /// general case).
  explicit OnlineSolver(InstanceHeader header, SolverConfig config = {});

  /// Runs the primal-dual process for one arriving row. Throws
  /// kHeaderViolation for rows outside the declared bounds and
  /// IntegrationFailure when max_steps_per_constraint is exhausted.
  StepTrace process_constraint(const CoveringConstraint& row);

  /// Step the Euler integrator would take next on `row` (which must be
  /// unsatisfied and fully costed).
  double choose_step(const CoveringConstraint& row) const;

  /// One explicit Euler step of length dtau with the gradient frozen at the
  /// current point. Does not touch y or mu.
  void integrate_step(const CoveringConstraint& row, double dtau);

  const SolverState& state() const { return state_; }
  const InstanceHeader& header() const { return header_; }
  const SolverConfig& config() const { return config_; }
  const GroupIndex& groups() const { return groups_; }
  double delta() const { return *config_.delta; }
  const InstanceStats& stats() const { return tracker_.stats(); }

  /// f(x) from the maintained power sums.
  double objective() const;

  /// A^T y recomputed from the row log.
  std::vector<double> recompute_mu() const;

 private:
  struct StepPlan {
    double dtau = 0.0;
    bool final = false;
  };

  void compute_rates(const CoveringConstraint& row,
                     std::vector<double>& rates) const;
  StepPlan plan_step(const CoveringConstraint& row,
                     const std::vector<double>& rates, double lhs) const;
  double trial_lhs(const CoveringConstraint& row,
                   const std::vector<double>& rates, double dtau) const;
  void apply_step(const CoveringConstraint& row,
                  const std::vector<double>& rates, double dtau);
  void set_value(std::size_t i, double value);
  void refresh_stale_terms();
  bool fast_path_applies(const CoveringConstraint& row) const;
  double integrate_exact_linear(const CoveringConstraint& row);

  InstanceHeader header_;
  SolverConfig config_;
  GroupIndex groups_;
  StatsTracker tracker_;
  SolverState state_;
  std::vector<double> rates_;
  std::vector<std::size_t> touched_terms_;
};

}  // namespace lqcover
