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

#include "lqcover/routing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lqcover/error.hpp"
#include "lqcover/rng.hpp"

namespace lqcover {

namespace {

double group_exponent(double p) {
  return std::isinf(p) ? 1.0 : dual_exponent(p);
}

}  // namespace

void RoutingNetwork::validate() const {
  const std::size_t m = graph.edge_count();
  for (std::size_t j = 0; j < groups.size(); ++j) {
    const CapacityGroup& g = groups[j];
    const std::string where = "group " + std::to_string(j) + ": ";
    if (g.edges.empty()) fail(ErrorCode::kInvalidArgument, where + "no edges");
    std::vector<std::size_t> sorted = g.edges;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.back() >= m) {
      fail(ErrorCode::kInvalidArgument, where + "edge id out of range");
    }
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      fail(ErrorCode::kInvalidArgument, where + "repeated edge");
    }
    if (!(g.capacity > 0.0) || !std::isfinite(g.capacity)) {
      fail(ErrorCode::kInvalidArgument, where + "capacity must be positive");
    }
    if (!(g.p > 1.0)) {
      fail(ErrorCode::kInvalidArgument,
           where + "norm exponent p must exceed 1 (or be inf)");
    }
  }
}

ColumnMap::ColumnMap(const RoutingNetwork& network)
    : copies_(network.graph.edge_count()) {
  network.validate();
  for (std::size_t j = 0; j < network.groups.size(); ++j) {
    for (std::size_t e : network.groups[j].edges) {
      copies_[e].push_back(group_of_.size());
      group_of_.push_back(j);
      edge_of_.push_back(e);
    }
  }
}

std::size_t ColumnMap::max_multiplicity() const {
  std::size_t r = 0;
  for (const auto& c : copies_) r = std::max(r, c.size());
  return r;
}

ColumnMap duplicate_overlapping_groups(const RoutingNetwork& network) {
  return ColumnMap(network);
}

InstanceHeader routing_header(const RoutingNetwork& network,
                              const ColumnMap& columns,
                              std::size_t max_requests) {
  InstanceHeader h;
  h.n = columns.copy_count() + max_requests;
  h.a_min = 1.0;
  h.a_max = 1.0;
  h.disjoint = true;
  std::vector<NormTerm> terms(network.groups.size());
  for (std::size_t j = 0; j < network.groups.size(); ++j) {
    terms[j].weight = network.groups[j].capacity;
    terms[j].exponent = group_exponent(network.groups[j].p);
  }
  for (std::size_t c = 0; c < columns.copy_count(); ++c) {
    terms[columns.group_of(c)].set.push_back(c);
  }
  std::size_t widest = 1;
  for (NormTerm& t : terms) {
    widest = std::max(widest, t.set.size());
    h.terms.push_back(std::move(t));
  }
  for (std::size_t i = 0; i < max_requests; ++i) {
    h.terms.push_back({{columns.copy_count() + i}, 1.0, 1.0});
  }
  const std::size_t nodes = network.graph.node_count();
  const std::size_t longest =
      1 + (nodes > 0 ? nodes - 1 : 0) * columns.max_multiplicity();
  h.d = std::max(widest, longest);
  return h;
}

Router::Router(RoutingNetwork network, std::size_t max_requests,
               SolverConfig config)
    : network_(std::move(network)),
      columns_(network_),
      max_requests_(max_requests),
      solver_(routing_header(network_, columns_, max_requests), config) {
  iteration_bound_ = 2 * (columns_.copy_count() + 1);
}

std::vector<double> Router::edge_weights() const {
  const std::vector<double>& x = solver_.state().x;
  std::vector<double> w(network_.graph.edge_count(), 0.0);
  for (std::size_t e = 0; e < w.size(); ++e) {
    for (std::size_t c : columns_.copies_of(e)) w[e] += x[c];
  }
  return w;
}

RequestOutcome Router::handle_request(std::size_t s, std::size_t t) {
  const std::size_t id = outcomes_.size();
  if (id >= max_requests_) {
    fail(ErrorCode::kInvalidArgument,
         "more than the declared " + std::to_string(max_requests_) +
             " requests");
  }
  const std::size_t nodes = network_.graph.node_count();
  if (s >= nodes || t >= nodes || s == t) {
    fail(ErrorCode::kInvalidArgument,
         "request needs two distinct nodes in range");
  }
  RequestOutcome out;
  out.id = id;
  out.source = s;
  out.sink = t;
  const std::size_t zi = z_variable(id);

  CoveringConstraint row;
  while (true) {
    PathResult path;
    try {
      path = shortest_path(network_.graph, edge_weights(), s, t,
                           solver_.state().x[zi]);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::kUnreachable) throw;
      out.rejected = true;
      break;
    }
    out.final_length = path.length;
    if (!(path.length < 0.5)) break;
    if (out.iterations >= iteration_bound_) {
      fail(ErrorCode::kIterationBound,
           "shortest-path separation exceeded " +
               std::to_string(iteration_bound_) + " rows");
    }
    row.entries.clear();
    for (std::size_t e : path.edges) {
      for (std::size_t c : columns_.copies_of(e)) row.entries.push_back({c, 1.0});
    }
    row.entries.push_back({zi, 1.0});
    const StepTrace step = solver_.process_constraint(row);
    out.paths.push_back({path.edges, step.tau});
    out.total_flow += step.tau;
    ++out.iterations;
  }
  out.z = solver_.state().x[zi];
  outcomes_.push_back(out);
  return out;
}

double Router::copy_mu_spread() const {
  const std::vector<double>& mu = solver_.state().mu;
  double spread = 0.0;
  for (std::size_t e = 0; e < network_.graph.edge_count(); ++e) {
    const auto& cs = columns_.copies_of(e);
    for (std::size_t c : cs) {
      spread = std::max(spread, std::abs(mu[c] - mu[cs.front()]));
    }
  }
  return spread;
}

double Router::reported_primal() const {
  return 2.0 * solver_.state().primal_value;
}

double Router::violation() const {
  return dual_violation(solver_.header(), solver_.state().mu).max;
}

Assignment scale_and_round(std::span<const RequestOutcome> outcomes,
                           std::size_t edge_count, double violation,
                           std::uint64_t seed) {
  Assignment out;
  out.loads.assign(edge_count, 0.0);
  out.chosen.resize(outcomes.size());
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const RequestOutcome& req = outcomes[i];
    if (req.total_flow == 0.0) continue;
    if (!(violation > 0.0)) {
      fail(ErrorCode::kScaling, "positive flow with a zero violation factor");
    }
    const double scale = 1.0 / (8.0 * violation);
    if (req.total_flow * scale > 1.0 + 1e-12) {
      fail(ErrorCode::kScaling,
           "request " + std::to_string(req.id) +
               " has selection probabilities summing to " +
               std::to_string(req.total_flow * scale));
    }
    const double u = CounterRng(seed, req.id).uniform(0);
    double acc = 0.0;
    for (std::size_t p = 0; p < req.paths.size(); ++p) {
      acc += req.paths[p].flow * scale;
      if (u < acc) {
        out.chosen[i] = p;
        for (std::size_t e : req.paths[p].edges) out.loads[e] += 1.0;
        ++out.routed;
        break;
      }
    }
  }
  return out;
}

CapacityReport capacity_check(const Assignment& assignment,
                              const RoutingNetwork& network) {
  CapacityReport out;
  std::vector<double> buf;
  for (const CapacityGroup& g : network.groups) {
    buf.clear();
    for (std::size_t e : g.edges) buf.push_back(assignment.loads.at(e));
    const double norm = lq_norm(buf, g.p);
    const bool bad = norm > g.capacity * (1.0 + 1e-12);
    out.group_norms.push_back(norm);
    out.violated.push_back(bad);
    if (bad) ++out.violations;
  }
  return out;
}

bool high_capacity(const RoutingNetwork& network) {
  const double m = static_cast<double>(network.graph.edge_count());
  const double log_m = std::log(std::max(m, 1.0));
  for (const CapacityGroup& g : network.groups) {
    const double size = static_cast<double>(g.edges.size());
    const double root = std::isinf(g.p) ? 1.0 : std::pow(size, 1.0 / g.p);
    if (g.capacity < 8.0 * log_m * root) return false;
  }
  return true;
}

}  // namespace lqcover
