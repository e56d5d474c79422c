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

// Checks on a finished (or in-progress) run: feasibility, weak duality, the
// dual violation factor and the certified competitive ratio derived from
// them.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lqcover/model.hpp"
#include "lqcover/reduction.hpp"
#include "lqcover/solver.hpp"

namespace lqcover {

struct DualViolation {
  std::vector<double> per_term;  // ||mu(S_e)||_p / c_e, 0 for zero weights
  double max = 0.0;
  // Zero-weight terms cannot be scaled into feasibility; their dual norms
  // are reported here instead of entering `max`.
  std::vector<std::size_t> zero_weight_terms;
  std::vector<double> zero_weight_norms;
};

/// Requires a disjoint header.
DualViolation dual_violation(const InstanceHeader& header,
                             std::span<const double> mu);

struct DualityChain {
  double dual_sum = 0.0;   // sum_k y_k
  double y_ax = 0.0;       // y^T A x
  double mu_x = 0.0;       // mu^T x
  double holder = 0.0;     // sum_e ||mu(S_e)||_p ||x(S_e)||_q
};

/// Evaluates the chain and returns a description of every link violated
/// beyond relative tolerance `tol`.
std::vector<std::string> check_duality_chain(const DualityChain& chain,
                                             double tol = 1e-8);

/// Computes the chain; throws kCertificateFailure if a link fails.
DualityChain weak_duality_check(const InstanceHeader& header,
                                std::span<const CoveringConstraint> rows,
                                std::span<const double> x,
                                std::span<const double> y,
                                std::span<const double> mu);

/// 1 + 6 ln(max(d rho, e))
double violation_bound(const InstanceHeader& header);

struct Certificate {
  double primal = 0.0;    // f(x_bar) - f(initial x_bar)
  double dual = 0.0;      // sum_k y_k
  double f_offset = 0.0;  // f(initial x_bar)
  double violation = 0.0;
  double bound = 0.0;
  double certified_ratio = 1.0;  // primal * violation / dual
  double pd_gap = 1.0;           // primal / dual
  double pd_gap_limit = 0.0;     // 2 (1 + eta)^2 * projection factor
  double lower_bound = 0.0;      // dual / violation, a lower bound on OPT
  DualViolation per_term;
  DualityChain chain;
  double mu_drift = 0.0;         // max |mu - A^T y|
  double min_slack = 0.0;        // min_k (a_k . x_bar - 1) over original rows
  std::size_t rows = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Builds the certificate and records every failed assertion instead of
/// throwing.
Certificate evaluate_certificate(const OnlineSolver& solver);
Certificate evaluate_certificate(const ReducedSolver& solver);

/// Same, but throws kCertificateFailure listing the failures.
Certificate certified_ratio(const OnlineSolver& solver);
Certificate certified_ratio(const ReducedSolver& solver);

}  // namespace lqcover
