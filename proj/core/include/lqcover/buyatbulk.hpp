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

// Fractional online non-uniform buy-at-bulk. For every root r, terminal u and
// edge e a capacity variable f(r,u,e) says how much of e is reserved for
// routing between u and r. The objective is
//
//   sum_{r,e} c_e * ||f(r,.,e)||_q  +  sum_{r,u,e} l_e * f(r,u,e)
//
// with q = ceil(log2 |V|) + 1, a constant-factor stand-in for the max over
// terminals. Every arriving pair (s, t) is served by generating min-cut
// covering rows until the pair is fractionally connected.

#include <cstddef>
#include <span>
#include <vector>

#include "lqcover/certification.hpp"
#include "lqcover/graph.hpp"
#include "lqcover/reduction.hpp"
#include "lqcover/solver.hpp"

namespace lqcover {

struct BabNetwork {
  Digraph graph;
  std::vector<double> fixed_cost;        // c_e
  std::vector<double> incremental_cost;  // l_e

  std::size_t add_edge(std::size_t from, std::size_t to, double fixed,
                       double incremental);
  void validate() const;
};

/// ceil(log2 nodes) + 1
double bab_exponent(std::size_t nodes);

struct PairTrace {
  std::size_t source = 0;
  std::size_t sink = 0;
  std::size_t iterations = 0;       // generated covering rows
  std::size_t inner_iterations = 0; // solver calls inside the reduction
  double connectivity = 0.0;        // sum_r min(MC(r,s), MC(r,t)) at exit
};

struct BabObjective {
  double exact = 0.0;      // max over terminals
  double surrogate = 0.0;  // lq norm over terminals
};

class BuyAtBulk {
 public:
  explicit BuyAtBulk(BabNetwork network, SolverConfig config = {});

  /// Throws kInvalidArgument when s == t, kInfeasible when a generated row
  /// is empty (t cannot be connected to s at all) and kIterationBound when
  /// the separation loop runs away.
  PairTrace handle_pair(std::size_t s, std::size_t t);

  /// Reported capacities 2 * min over copies, indexed by variable().
  std::vector<double> capacities() const;
  /// Objective of capacities().
  BabObjective objective() const;
  BabObjective objective(std::span<const double> capacities) const;

  /// MC(r,u) on the given capacities: cut u -> r for sources, r -> u for
  /// sinks. Infinite when r == u.
  CutResult terminal_cut(std::span<const double> capacities, std::size_t root,
                         std::size_t terminal, bool terminal_is_source) const;

  std::size_t variable(std::size_t root, std::size_t terminal,
                       std::size_t edge) const;

  Certificate certificate() const { return evaluate_certificate(solver_); }
  const ReducedSolver& solver() const { return solver_; }
  const BabNetwork& network() const { return network_; }
  const InstanceHeader& header() const { return solver_.original_header(); }
  std::size_t iteration_bound() const { return iteration_bound_; }
  double exponent() const { return exponent_; }

 private:
  std::vector<double> min_capacities() const;

  BabNetwork network_;
  double exponent_;
  ReducedSolver solver_;
  std::size_t iteration_bound_ = 0;
};

/// Header of the covering program for `network` (exposed for tests).
InstanceHeader bab_header(const BabNetwork& network);

}  // namespace lqcover
