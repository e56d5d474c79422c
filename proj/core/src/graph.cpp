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

#include "lqcover/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <utility>

#include "lqcover/error.hpp"
#include "lqcover/model.hpp"

namespace lqcover {

Digraph::Digraph(std::size_t nodes) : out_(nodes), in_(nodes) {}

std::size_t Digraph::add_edge(std::size_t from, std::size_t to) {
  if (from >= node_count() || to >= node_count()) {
    fail(ErrorCode::kInvalidArgument, "edge endpoint out of range");
  }
  if (from == to) {
    fail(ErrorCode::kInvalidArgument,
         "self-loop at node " + std::to_string(from));
  }
  const std::size_t id = arcs_.size();
  arcs_.push_back({from, to});
  out_[from].push_back(id);
  in_[to].push_back(id);
  return id;
}

namespace {

void check_endpoints(const Digraph& g, std::span<const double> values,
                     std::size_t s, std::size_t t) {
  if (values.size() != g.edge_count()) {
    fail(ErrorCode::kInvalidArgument, "need one value per edge");
  }
  if (s >= g.node_count() || t >= g.node_count()) {
    fail(ErrorCode::kInvalidArgument, "terminal out of range");
  }
  for (double v : values) {
    if (!(v >= 0.0) || std::isnan(v)) {
      fail(ErrorCode::kDomain, "edge values must be nonnegative");
    }
  }
}

class Dinic {
 public:
  Dinic(const Digraph& g, std::span<const double> cap, double eps)
      : head_(g.node_count()), level_(g.node_count()), it_(g.node_count()),
        eps_(eps) {
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      add(g.edge(e).from, g.edge(e).to, cap[e]);
    }
  }

  void run(std::size_t s, std::size_t t) {
    while (bfs(s, t)) {
      for (std::size_t v = 0; v < head_.size(); ++v) it_[v] = 0;
      while (push(s, t, kInfinity) > eps_) {
      }
    }
  }

  std::vector<bool> reachable(std::size_t s) const {
    std::vector<bool> seen(head_.size(), false);
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t a : head_[v]) {
        if (res_[a] > eps_ && !seen[to_[a]]) {
          seen[to_[a]] = true;
          stack.push_back(to_[a]);
        }
      }
    }
    return seen;
  }

 private:
  void add(std::size_t u, std::size_t v, double c) {
    head_[u].push_back(to_.size());
    to_.push_back(v);
    res_.push_back(c);
    head_[v].push_back(to_.size());
    to_.push_back(u);
    res_.push_back(0.0);
  }

  bool bfs(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      for (std::size_t a : head_[v]) {
        if (res_[a] > eps_ && level_[to_[a]] < 0) {
          level_[to_[a]] = level_[v] + 1;
          q.push(to_[a]);
        }
      }
    }
    return level_[t] >= 0;
  }

  double push(std::size_t v, std::size_t t, double limit) {
    if (v == t) return limit;
    for (std::size_t& i = it_[v]; i < head_[v].size(); ++i) {
      const std::size_t a = head_[v][i];
      const std::size_t w = to_[a];
      if (res_[a] <= eps_ || level_[w] != level_[v] + 1) continue;
      const double got = push(w, t, std::min(limit, res_[a]));
      if (got > 0.0) {
        res_[a] -= got;
        res_[a ^ 1] += got;
        return got;
      }
    }
    return 0.0;
  }

  std::vector<std::vector<std::size_t>> head_;
  std::vector<std::size_t> to_;
  std::vector<double> res_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
  double eps_;
};

}  // namespace

CutResult min_cut(const Digraph& g, std::span<const double> capacity,
                  std::size_t source, std::size_t sink) {
  check_endpoints(g, capacity, source, sink);
  if (source == sink) {
    fail(ErrorCode::kInvalidArgument, "min cut needs distinct terminals");
  }
  double cap_max = 0.0;
  for (double c : capacity) cap_max = std::max(cap_max, c);
  const double eps = cap_max > 0.0 ? 1e-12 * cap_max : 0.0;

  Dinic flow(g, capacity, eps);
  flow.run(source, sink);
  CutResult out;
  out.source_side = flow.reachable(source);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (out.source_side[g.edge(e).from] && !out.source_side[g.edge(e).to]) {
      out.edges.push_back(e);
      out.value += capacity[e];
    }
  }
  return out;
}

PathResult shortest_path(const Digraph& g, std::span<const double> weight,
                         std::size_t source, std::size_t sink, double offset) {
  check_endpoints(g, weight, source, sink);
  const std::size_t n = g.node_count();
  constexpr std::size_t kNoHops = std::numeric_limits<std::size_t>::max();

  // Distances to the sink, keyed by (length, hops).
  std::vector<double> dist(n, kInfinity);
  std::vector<std::size_t> hops(n, kNoHops);
  using Key = std::pair<std::pair<double, std::size_t>, std::size_t>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> heap;
  dist[sink] = 0.0;
  hops[sink] = 0;
  heap.push({{0.0, 0}, sink});
  while (!heap.empty()) {
    const auto [key, v] = heap.top();
    heap.pop();
    if (key != std::make_pair(dist[v], hops[v])) continue;
    for (std::size_t e : g.in_edges(v)) {
      const std::size_t u = g.edge(e).from;
      const std::pair<double, std::size_t> cand{dist[v] + weight[e],
                                                hops[v] + 1};
      if (cand < std::make_pair(dist[u], hops[u])) {
        dist[u] = cand.first;
        hops[u] = cand.second;
        heap.push({cand, u});
      }
    }
  }
  if (hops[source] == kNoHops) {
    fail(ErrorCode::kUnreachable, "node " + std::to_string(sink) +
                                      " is unreachable from " +
                                      std::to_string(source));
  }

  // Walk forward taking the smallest tight edge id. Hop counts strictly
  // decrease along tight edges, so the walk ends at the sink.
  PathResult out;
  out.length = offset;
  std::size_t v = source;
  while (v != sink) {
    std::size_t pick = kNoHops;
    for (std::size_t e : g.out_edges(v)) {
      const std::size_t w = g.edge(e).to;
      if (hops[w] == kNoHops || hops[w] + 1 != hops[v]) continue;
      const double via = weight[e] + dist[w];
      if (std::abs(via - dist[v]) <= 1e-12 * std::max(1.0, dist[v])) {
        pick = std::min(pick, e);
      }
    }
    if (pick == kNoHops) {
      fail(ErrorCode::kUnreachable, "shortest path reconstruction failed");
    }
    out.edges.push_back(pick);
    out.length += weight[pick];
    v = g.edge(pick).to;
  }
  return out;
}

}  // namespace lqcover
