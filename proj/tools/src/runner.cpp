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

#include "lqcover/cli/runner.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "lqcover/buyatbulk.hpp"
#include "lqcover/error.hpp"
#include "lqcover/reduction.hpp"
#include "lqcover/routing.hpp"

namespace lqcover::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Json config_json(const RunOptions& options, double delta) {
  SolverConfig resolved = options.solver;
  resolved.delta = delta;
  Json j = to_json(resolved);
  j["seed"] = options.seed;
  if (options.max_requests) j["max_requests"] = options.max_requests;
  return j;
}

class SolveSession {
 public:
  SolveSession(const InstanceHeader& header, const RunOptions& options)
      : options_(options), solver_(header, options.solver) {}

  void feed(const CoveringConstraint& row) {
    const ReductionTrace tr = solver_.process_general_constraint(row);
    std::size_t steps = 0;
    double y = 0.0;
    bool fast = false;
    bool saturated = false;
    bool satisfied = true;
    for (const StepTrace& s : tr.steps) {
      steps += s.steps;
      y += s.tau;
      fast = fast || s.fast_path;
      saturated = saturated || s.saturated_uncosted;
      satisfied = satisfied && s.already_satisfied;
    }
    trace_.push_back({{"row", trace_.size()},
                      {"inner_iterations", tr.inner_iterations},
                      {"steps", steps},
                      {"y", y},
                      {"fast_path", fast},
                      {"saturated_uncosted", saturated},
                      {"already_satisfied", satisfied}});
  }

  RunResult finish(Clock::time_point start) {
    const OnlineSolver& inner = solver_.solver();
    const Certificate cert = evaluate_certificate(solver_);
    RunResult out;
    Json& r = out.report;
    r["kind"] = "solve";
    r["config"] = config_json(options_, inner.delta());
    r["instance"] = to_json(solver_.original_header());
    r["stats"] = to_json(inner.stats());
    r["reduction"] = {{"identity", solver_.map().identity()},
                      {"copies", solver_.map().copy_count()},
                      {"max_copies", solver_.map().max_copies()},
                      {"iteration_bound", solver_.iteration_bound()}};
    r["certificate"] = to_json(cert);
    r["flags"] = {{"uncosted_saturations", inner.state().saturation_events},
                  {"overshoot_events", inner.state().overshoot_events}};
    r["trace"] = trace_;
    r["solution"] = solver_.solution();
    if (options_.timing) r["wall_seconds"] = seconds_since(start);
    out.exit_code = cert.ok() ? kExitOk : kExitCertificate;
    return out;
  }

 private:
  RunOptions options_;
  ReducedSolver solver_;
  Json trace_ = Json::array();
};

}  // namespace

RunResult run_solve(InstanceReader& reader, const RunOptions& options) {
  const auto start = Clock::now();
  SolveSession session(reader.header(), options);
  while (auto row = reader.next()) session.feed(*row);
  return session.finish(start);
}

RunResult run_solve(const InstanceHeader& header,
                    std::span<const CoveringConstraint> rows,
                    const RunOptions& options) {
  const auto start = Clock::now();
  SolveSession session(header, options);
  for (const CoveringConstraint& row : rows) session.feed(row);
  return session.finish(start);
}

RunResult run_bab(const GraphSpec& graph, std::span<const Event> events,
                  const RunOptions& options) {
  const auto start = Clock::now();
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].kind != EventKind::kPair) {
      fail(ErrorCode::kParse,
           "event " + std::to_string(i) + ": bab expects 'pair' events");
    }
  }
  BuyAtBulk bab(graph.bab_network(), options.solver);
  Json pairs = Json::array();
  for (const Event& ev : events) {
    const PairTrace tr = bab.handle_pair(ev.source, ev.sink);
    pairs.push_back({{"source", tr.source},
                     {"sink", tr.sink},
                     {"iterations", tr.iterations},
                     {"inner_iterations", tr.inner_iterations},
                     {"connectivity", tr.connectivity}});
  }
  const Certificate cert = bab.certificate();
  const BabObjective obj = bab.objective();

  RunResult out;
  Json& r = out.report;
  r["kind"] = "bab";
  r["config"] = config_json(options, bab.solver().solver().delta());
  r["network"] = {{"nodes", graph.nodes},
                  {"edges", graph.edges.size()},
                  {"exponent", bab.exponent()},
                  {"variables", bab.header().n},
                  {"copies", bab.solver().map().copy_count()},
                  {"iteration_bound", bab.iteration_bound()}};
  r["pairs"] = pairs;
  r["objective"] = {{"exact", obj.exact}, {"surrogate", obj.surrogate}};
  r["certificate"] = to_json(cert);
  if (options.timing) r["wall_seconds"] = seconds_since(start);
  out.exit_code = cert.ok() ? kExitOk : kExitCertificate;
  return out;
}

RunResult run_route(const GraphSpec& graph, std::span<const Event> events,
                    const RunOptions& options) {
  const auto start = Clock::now();
  std::size_t requests = 0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].kind != EventKind::kRequest) {
      fail(ErrorCode::kParse,
           "event " + std::to_string(i) + ": route expects 'request' events");
    }
    ++requests;
  }
  const std::size_t declared =
      options.max_requests ? options.max_requests : requests;
  Router router(graph.routing_network(), declared, options.solver);
  for (const Event& ev : events) router.handle_request(ev.source, ev.sink);

  const double violation = router.violation();
  const Assignment rounded =
      scale_and_round(router.outcomes(), graph.edges.size(), violation,
                      options.seed);
  const CapacityReport caps = capacity_check(rounded, router.network());
  const Certificate cert = router.certificate();

  Json outcomes = Json::array();
  double total_flow = 0.0;
  double max_scaled = 0.0;
  for (const RequestOutcome& o : router.outcomes()) {
    Json paths = Json::array();
    for (const PathFlow& p : o.paths) {
      paths.push_back({{"edges", p.edges}, {"flow", p.flow}});
    }
    outcomes.push_back({{"id", o.id},
                        {"source", o.source},
                        {"sink", o.sink},
                        {"rejected", o.rejected},
                        {"iterations", o.iterations},
                        {"total_flow", o.total_flow},
                        {"z", o.z},
                        {"paths", paths}});
    total_flow += o.total_flow;
    if (violation > 0.0) max_scaled = std::max(max_scaled, o.total_flow / violation);
  }
  Json chosen = Json::array();
  for (const auto& c : rounded.chosen) {
    chosen.push_back(c ? Json(*c) : Json(nullptr));
  }

  RunResult out;
  Json& r = out.report;
  r["kind"] = "route";
  r["config"] = config_json(options, router.solver().delta());
  r["network"] = {{"nodes", graph.nodes},
                  {"edges", graph.edges.size()},
                  {"groups", graph.groups.size()},
                  {"copies", router.columns().copy_count()},
                  {"declared_requests", declared},
                  {"high_capacity", high_capacity(router.network())}};
  r["requests"] = outcomes;
  r["fractional"] = {{"total_flow", total_flow},
                     {"violation", violation},
                     {"max_scaled_request_flow", max_scaled},
                     {"reported_primal", router.reported_primal()},
                     {"copy_mu_spread", router.copy_mu_spread()}};
  r["rounding"] = {{"seed", options.seed},
                   {"expected_throughput",
                    violation > 0.0 ? total_flow / (8.0 * violation) : 0.0},
                   {"routed", rounded.routed},
                   {"chosen", chosen},
                   {"loads", rounded.loads},
                   {"group_norms", caps.group_norms},
                   {"violations", caps.violations}};
  r["certificate"] = to_json(cert);
  if (options.timing) r["wall_seconds"] = seconds_since(start);
  const bool copies_agree = router.copy_mu_spread() <= 1e-9;
  out.exit_code = cert.ok() && copies_agree ? kExitOk : kExitCertificate;
  return out;
}

Json run_oracle(const InstanceHeader& header,
                std::span<const CoveringConstraint> rows,
                const OracleOptions& options) {
  const OracleResult res = offline_oracle(header, rows, options);
  return {{"kind", "oracle"},
          {"mode", std::string(to_string(options.mode))},
          {"resolution", options.resolution},
          {"value", res.value},
          {"argmin", res.argmin},
          {"evaluations", res.evaluations}};
}

RunOptions options_from_report(const Json& report) {
  if (!report.contains("config")) {
    fail(ErrorCode::kParse, "report has no config section");
  }
  const Json& c = report["config"];
  RunOptions o;
  o.solver = solver_config_from_json(c);
  if (c.contains("seed")) o.seed = c["seed"].get<std::uint64_t>();
  if (c.contains("max_requests")) {
    o.max_requests = c["max_requests"].get<std::size_t>();
  }
  return o;
}

}  // namespace lqcover::cli
