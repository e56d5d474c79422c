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

// Directed multigraph plus the two combinatorial subroutines the network
// applications need: s-t minimum cut and shortest path.

#include <cstddef>
#include <span>
#include <vector>

namespace lqcover {

struct Arc {
  std::size_t from = 0;
  std::size_t to = 0;
};

class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(std::size_t nodes);

  /// Returns the new edge id. Parallel edges are fine, self-loops throw.
  std::size_t add_edge(std::size_t from, std::size_t to);

  std::size_t node_count() const { return out_.size(); }
  std::size_t edge_count() const { return arcs_.size(); }
  const Arc& edge(std::size_t id) const { return arcs_[id]; }
  const std::vector<std::size_t>& out_edges(std::size_t v) const {
    return out_[v];
  }
  const std::vector<std::size_t>& in_edges(std::size_t v) const {
    return in_[v];
  }

 private:
  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

struct CutResult {
  // Sum of capacities over `edges`; equals the max-flow value up to
  // floating-point error.
  double value = 0.0;
  std::vector<std::size_t> edges;  // source side -> sink side, sorted
  std::vector<bool> source_side;
};

/// Minimum s-t cut by Dinic's algorithm. Residual capacities below
/// 1e-12 * max capacity count as saturated. With all capacities zero the cut
/// is the boundary of the set reachable from the source.
CutResult min_cut(const Digraph& g, std::span<const double> capacity,
                  std::size_t source, std::size_t sink);

struct PathResult {
  double length = 0.0;  // offset + sum of weights along the path
  std::vector<std::size_t> edges;
};

/// Shortest source-sink path under nonnegative edge weights, with `offset`
/// added to its length. Among shortest paths the fewest-hop ones are
/// preferred and, among those, the lexicographically smallest edge-id
/// sequence. Throws kUnreachable when no path exists.
PathResult shortest_path(const Digraph& g, std::span<const double> weight,
                         std::size_t source, std::size_t sink,
                         double offset = 0.0);

}  // namespace lqcover
