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

#include <benchmark/benchmark.h>

#include <vector>

#include "lqcover/cli/generators.hpp"
#include "lqcover/graph.hpp"
#include "lqcover/reduction.hpp"
#include "lqcover/routing.hpp"
#include "lqcover/solver.hpp"

using namespace lqcover;

namespace {

Digraph grid_graph(std::size_t side) {
  Digraph g(side * side);
  for (std::size_t r = 0; r < side; ++r) {
    for (std::size_t c = 0; c < side; ++c) {
      const std::size_t v = r * side + c;
      if (c + 1 < side) {
        g.add_edge(v, v + 1);
        g.add_edge(v + 1, v);
      }
      if (r + 1 < side) {
        g.add_edge(v, v + side);
        g.add_edge(v + side, v);
      }
    }
  }
  return g;
}

void BM_SolveRandomInstance(benchmark::State& state) {
  const cli::Instance inst = cli::random_instance(static_cast<std::uint64_t>(state.range(0)));
  std::size_t steps = 0;
  for (auto _ : state) {
    OnlineSolver s(inst.header);
    for (const auto& row : inst.rows) steps += s.process_constraint(row).steps;
    benchmark::DoNotOptimize(s.state().dual_value);
  }
  state.counters["steps"] =
      benchmark::Counter(static_cast<double>(steps), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_SolveRandomInstance)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_SolveBlockFamily(benchmark::State& state) {
  const cli::Instance demo = cli::lower_bound_demo(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    OnlineSolver s(demo.header);
    for (const auto& row : demo.rows) s.process_constraint(row);
    benchmark::DoNotOptimize(s.state().primal_value);
  }
}
BENCHMARK(BM_SolveBlockFamily)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_ReducedOverlapping(benchmark::State& state) {
  const cli::Instance inst = cli::overlapping_instance(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    ReducedSolver rs(inst.header);
    for (const auto& row : inst.rows) rs.process_general_constraint(row);
    benchmark::DoNotOptimize(rs.solution());
  }
}
BENCHMARK(BM_ReducedOverlapping)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_MinCutGrid(benchmark::State& state) {
  const Digraph g = grid_graph(static_cast<std::size_t>(state.range(0)));
  cli::Draw draw(3);
  std::vector<double> cap(g.edge_count());
  for (double& c : cap) c = draw.uniform(0.1, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_cut(g, cap, 0, g.node_count() - 1).value);
  }
}
BENCHMARK(BM_MinCutGrid)->Arg(8)->Arg(32);

void BM_ShortestPathGrid(benchmark::State& state) {
  const Digraph g = grid_graph(static_cast<std::size_t>(state.range(0)));
  cli::Draw draw(4);
  std::vector<double> w(g.edge_count());
  for (double& x : w) x = draw.uniform(0.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(shortest_path(g, w, 0, g.node_count() - 1).length);
  }
}
BENCHMARK(BM_ShortestPathGrid)->Arg(8)->Arg(32);

void BM_RouteFixture(benchmark::State& state) {
  const RoutingNetwork net = cli::routing_fixture().routing_network();
  const auto events = cli::routing_fixture_requests(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    Router router(net, events.size());
    for (const cli::Event& ev : events) router.handle_request(ev.source, ev.sink);
    benchmark::DoNotOptimize(router.violation());
  }
}
BENCHMARK(BM_RouteFixture)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
