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

// Online throughput maximisation where groups of edges share an lp-norm
// capacity. The primal covering program has one variable per (edge, group
// containing it) and one z per request:
//
//   minimize  sum_j c_j ||x(S_j)||_{q_j} + sum_i z_i
//   s.t.      z_i + sum_{e in P} x_e >= 1   for every request i, s_i-t_i path P
//
// Paths are generated on demand by a shortest-path separation loop; the dual
// value of each generated row is the fractional flow on that path. The flows
// are then scaled into feasibility and rounded to integral paths.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lqcover/certification.hpp"
#include "lqcover/graph.hpp"
#include "lqcover/solver.hpp"

namespace lqcover {

struct CapacityGroup {
  std::vector<std::size_t> edges;
  double p = 1.0;  // norm exponent on the bandwidths, may be kInfinity
  double capacity = 1.0;
};

struct RoutingNetwork {
  Digraph graph;
  std::vector<CapacityGroup> groups;

  /// Throws kInvalidArgument on empty or out-of-range groups, repeated
  /// edges within a group, capacity <= 0, or p <= 1.
  void validate() const;
};

/// Variable layout of the duplicated columns: each edge gets one copy per
/// group that contains it. Edges in no group carry no variable.
class ColumnMap {
 public:
  explicit ColumnMap(const RoutingNetwork& network);

  std::size_t copy_count() const { return group_of_.size(); }
  const std::vector<std::size_t>& copies_of(std::size_t edge) const {
    return copies_[edge];
  }
  std::size_t group_of(std::size_t copy) const { return group_of_[copy]; }
  std::size_t edge_of(std::size_t copy) const { return edge_of_[copy]; }
  std::size_t max_multiplicity() const;
  /// True when no edge lies in two groups.
  bool identity() const { return max_multiplicity() <= 1; }

 private:
  std::vector<std::vector<std::size_t>> copies_;
  std::vector<std::size_t> group_of_;
  std::vector<std::size_t> edge_of_;
};

ColumnMap duplicate_overlapping_groups(const RoutingNetwork& network);

struct PathFlow {
  std::vector<std::size_t> edges;
  double flow = 0.0;  // dual value of the generated row
};

struct RequestOutcome {
  std::size_t id = 0;
  std::size_t source = 0;
  std::size_t sink = 0;
  std::vector<PathFlow> paths;
  double total_flow = 0.0;
  double z = 0.0;           // value of z_i after the request
  bool rejected = false;    // sink unreachable
  std::size_t iterations = 0;
  double final_length = 0.0;
};

class Router {
 public:
  Router(RoutingNetwork network, std::size_t max_requests,
         SolverConfig config = {});

  RequestOutcome handle_request(std::size_t s, std::size_t t);

  /// Edge weights sum_{copies} x for the shortest-path oracle.
  std::vector<double> edge_weights() const;

  /// Largest |mu| difference between copies of the same edge.
  double copy_mu_spread() const;

  /// Certificate of the underlying covering run.
  Certificate certificate() const { return evaluate_certificate(solver_); }
  /// Twice the solver's primal value.
  double reported_primal() const;
  /// Measured dual violation of the flows.
  double violation() const;

  const std::vector<RequestOutcome>& outcomes() const { return outcomes_; }
  const OnlineSolver& solver() const { return solver_; }
  const RoutingNetwork& network() const { return network_; }
  const ColumnMap& columns() const { return columns_; }
  std::size_t z_variable(std::size_t request) const {
    return columns_.copy_count() + request;
  }
  std::size_t iteration_bound() const { return iteration_bound_; }

 private:
  RoutingNetwork network_;
  ColumnMap columns_;
  std::size_t max_requests_;
  OnlineSolver solver_;
  std::vector<RequestOutcome> outcomes_;
  std::size_t iteration_bound_ = 0;
};

/// Covering header for a network (exposed for tests).
InstanceHeader routing_header(const RoutingNetwork& network,
                              const ColumnMap& columns,
                              std::size_t max_requests);

struct Assignment {
  // Index into the request's paths, or nullopt when nothing was routed.
  std::vector<std::optional<std::size_t>> chosen;
  std::vector<double> loads;  // X_e per edge
  std::size_t routed = 0;
};

/// Each request independently routes path P with probability
/// flow(P) / (8 * violation), or nothing. One uniform draw per request from
/// stream = request index. Throws kScaling when a request's probabilities
/// sum above 1.
Assignment scale_and_round(std::span<const RequestOutcome> outcomes,
                           std::size_t edge_count, double violation,
                           std::uint64_t seed);

struct CapacityReport {
  std::vector<double> group_norms;  // ||X(S_j)||_{p_j}
  std::vector<bool> violated;
  std::size_t violations = 0;
};

CapacityReport capacity_check(const Assignment& assignment,
                              const RoutingNetwork& network);

/// c_j >= 8 ln(m) |S_j|^{1/p_j} for every group.
bool high_capacity(const RoutingNetwork& network);

}  // namespace lqcover
