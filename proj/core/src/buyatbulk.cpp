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

#include "lqcover/buyatbulk.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lqcover/error.hpp"

namespace lqcover {

std::size_t BabNetwork::add_edge(std::size_t from, std::size_t to,
                                 double fixed, double incremental) {
  const std::size_t id = graph.add_edge(from, to);
  fixed_cost.push_back(fixed);
  incremental_cost.push_back(incremental);
  return id;
}

void BabNetwork::validate() const {
  if (fixed_cost.size() != graph.edge_count() ||
      incremental_cost.size() != graph.edge_count()) {
    fail(ErrorCode::kInvalidArgument, "need two costs per edge");
  }
  if (graph.node_count() < 2) {
    fail(ErrorCode::kInvalidArgument, "network needs at least two nodes");
  }
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    if (!(fixed_cost[e] >= 0.0) || !(incremental_cost[e] >= 0.0) ||
        !std::isfinite(fixed_cost[e]) || !std::isfinite(incremental_cost[e])) {
      fail(ErrorCode::kInvalidArgument,
           "edge " + std::to_string(e) + " has a negative or infinite cost");
    }
  }
}

double bab_exponent(std::size_t nodes) {
  return std::ceil(std::log2(static_cast<double>(std::max<std::size_t>(nodes, 1)))) + 1.0;
}

InstanceHeader bab_header(const BabNetwork& network) {
  network.validate();
  const std::size_t nv = network.graph.node_count();
  const std::size_t ne = network.graph.edge_count();
  const double q = bab_exponent(nv);
  auto var = [&](std::size_t r, std::size_t u, std::size_t e) {
    return (r * nv + u) * ne + e;
  };

  InstanceHeader h;
  h.n = nv * nv * ne;
  h.d = std::max(nv * ne, nv);
  h.a_min = 1.0;
  h.a_max = 1.0;
  // Zero-cost terms are left out: their variables are free either way.
  for (std::size_t r = 0; r < nv; ++r) {
    for (std::size_t e = 0; e < ne; ++e) {
      if (network.fixed_cost[e] > 0.0) {
        NormTerm t;
        t.weight = network.fixed_cost[e];
        t.exponent = q;
        for (std::size_t u = 0; u < nv; ++u) t.set.push_back(var(r, u, e));
        h.terms.push_back(std::move(t));
      }
      if (network.incremental_cost[e] > 0.0) {
        for (std::size_t u = 0; u < nv; ++u) {
          h.terms.push_back({{var(r, u, e)}, network.incremental_cost[e], 1.0});
        }
      }
    }
  }
  h.disjoint = sets_are_disjoint(h);
  return h;
}

BuyAtBulk::BuyAtBulk(BabNetwork network, SolverConfig config)
    : network_(std::move(network)),
      exponent_(bab_exponent(network_.graph.node_count())),
      solver_(bab_header(network_), config) {
  iteration_bound_ = 4 * solver_.solver().header().n;
}

std::size_t BuyAtBulk::variable(std::size_t root, std::size_t terminal,
                                std::size_t edge) const {
  const std::size_t nv = network_.graph.node_count();
  return (root * nv + terminal) * network_.graph.edge_count() + edge;
}

std::vector<double> BuyAtBulk::min_capacities() const {
  return solver_.min_copies();
}

std::vector<double> BuyAtBulk::capacities() const {
  std::vector<double> w = min_capacities();
  for (double& v : w) v *= 2.0;
  return w;
}

CutResult BuyAtBulk::terminal_cut(std::span<const double> capacities,
                                  std::size_t root, std::size_t terminal,
                                  bool terminal_is_source) const {
  if (root == terminal) {
    CutResult inf;
    inf.value = kInfinity;
    return inf;
  }
  const std::size_t ne = network_.graph.edge_count();
  const auto slice = capacities.subspan(variable(root, terminal, 0), ne);
  return terminal_is_source
             ? min_cut(network_.graph, slice, terminal, root)
             : min_cut(network_.graph, slice, root, terminal);
}

PairTrace BuyAtBulk::handle_pair(std::size_t s, std::size_t t) {
  const std::size_t nv = network_.graph.node_count();
  if (s >= nv || t >= nv) {
    fail(ErrorCode::kInvalidArgument, "pair endpoint out of range");
  }
  if (s == t) fail(ErrorCode::kInvalidArgument, "pair needs s != t");

  PairTrace trace;
  trace.source = s;
  trace.sink = t;
  CoveringConstraint row;
  while (true) {
    const std::vector<double> w = min_capacities();
    row.entries.clear();
    double total = 0.0;
    for (std::size_t r = 0; r < nv; ++r) {
      const CutResult from_s = terminal_cut(w, r, s, true);
      const CutResult to_t = terminal_cut(w, r, t, false);
      // Ties (within 1e-9) go to the source side.
      const bool use_source = from_s.value <= to_t.value + 1e-9;
      const CutResult& cut = use_source ? from_s : to_t;
      const std::size_t terminal = use_source ? s : t;
      total += std::min(from_s.value, to_t.value);
      for (std::size_t e : cut.edges) {
        row.entries.push_back({variable(r, terminal, e), 1.0});
      }
    }
    trace.connectivity = total;
    if (total >= 0.5) break;
    if (row.entries.empty()) {
      fail(ErrorCode::kInfeasible, "no path connects node " +
                                       std::to_string(s) + " to node " +
                                       std::to_string(t));
    }
    if (trace.iterations >= iteration_bound_) {
      fail(ErrorCode::kIterationBound,
           "min-cut separation exceeded " + std::to_string(iteration_bound_) +
               " rows");
    }
    trace.inner_iterations +=
        solver_.process_general_constraint(row).inner_iterations;
    ++trace.iterations;
  }
  return trace;
}

BabObjective BuyAtBulk::objective(std::span<const double> caps) const {
  const std::size_t nv = network_.graph.node_count();
  const std::size_t ne = network_.graph.edge_count();
  if (caps.size() != nv * nv * ne) {
    fail(ErrorCode::kInvalidArgument, "capacity vector has the wrong length");
  }
  BabObjective out;
  std::vector<double> buf(nv);
  for (std::size_t r = 0; r < nv; ++r) {
    for (std::size_t e = 0; e < ne; ++e) {
      double sum = 0.0;
      for (std::size_t u = 0; u < nv; ++u) {
        buf[u] = caps[variable(r, u, e)];
        sum += buf[u];
      }
      const double top = *std::max_element(buf.begin(), buf.end());
      const double lin = network_.incremental_cost[e] * sum;
      out.exact += network_.fixed_cost[e] * top + lin;
      out.surrogate += network_.fixed_cost[e] * lq_norm(buf, exponent_) + lin;
    }
  }
  return out;
}

BabObjective BuyAtBulk::objective() const { return objective(capacities()); }

}  // namespace lqcover
