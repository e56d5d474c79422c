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

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "lqcover/cli/generators.hpp"
#include "lqcover/cli/io.hpp"
#include "lqcover/cli/report.hpp"
#include "lqcover/cli/runner.hpp"
#include "lqcover/error.hpp"

namespace {

using namespace lqcover;
using namespace lqcover::cli;

struct Flags {
  double eta = 1e-3;
  double delta = 0.0;
  std::uint64_t seed = 1;
  bool timing = false;
  std::string oracle_mode = "grid";
  double resolution = 1e-3;
  std::string output;

  RunOptions options() const {
    RunOptions o;
    o.solver.eta = eta;
    if (delta > 0.0) o.solver.delta = delta;
    o.seed = seed;
    o.timing = timing;
    return o;
  }
};

void add_solver_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--eta", f.eta, "per-step growth cap")->capture_default_str();
  cmd->add_option("--delta", f.delta, "initial value of costed variables");
  cmd->add_option("--seed", f.seed, "random seed")->capture_default_str();
  cmd->add_flag("--timing", f.timing, "include wall-clock time in the report");
  cmd->add_option("-o,--output", f.output, "write the report here");
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kInvalidArgument, "cannot open " + path);
  return in;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kInvalidArgument, "cannot write " + path);
  out << text << '\n';
}

Instance read_instance(const std::string& path) {
  std::ifstream in = open(path);
  InstanceReader reader(in);
  Instance inst{reader.header(), {}};
  while (auto row = reader.next()) inst.rows.push_back(*row);
  return inst;
}

int run(int argc, char** argv) {
  CLI::App app{"Online covering with sum-of-norms objectives"};
  app.require_subcommand(1);
  Flags f;

  std::string instance_path = "-";
  auto* solve = app.add_subcommand("solve", "run the online solver on an instance");
  solve->add_option("instance", instance_path, "instance file, '-' for stdin");
  add_solver_flags(solve, f);

  std::string report_path;
  auto* certify = app.add_subcommand(
      "certify", "replay a report's run and compare certificates");
  certify->add_option("instance", instance_path)->required();
  certify->add_option("report", report_path)->required();
  certify->add_option("-o,--output", f.output);

  auto* oracle = app.add_subcommand("oracle", "offline optimum of a small instance");
  oracle->add_option("instance", instance_path)->required();
  oracle->add_option("--oracle-mode", f.oracle_mode)
      ->check(CLI::IsMember({"grid", "subgrad"}))
      ->capture_default_str();
  oracle->add_option("--resolution", f.resolution)->capture_default_str();
  oracle->add_option("-o,--output", f.output);

  std::size_t demo_m = 16;
  std::string assertions_path;
  auto* demo = app.add_subcommand("gen-demo", "emit the l2 block lower-bound instance");
  demo->add_option("--m", demo_m, "number of blocks")->check(CLI::Range(2, 4096))
      ->capture_default_str();
  demo->add_option("--assertions", assertions_path, "write expected checks here");
  demo->add_option("-o,--output", f.output);

  std::string graph_path, events_path;
  auto* bab = app.add_subcommand("bab", "fractional online buy-at-bulk");
  bab->add_option("graph", graph_path)->required();
  bab->add_option("events", events_path)->required();
  add_solver_flags(bab, f);

  std::size_t max_requests = 0;
  auto* route = app.add_subcommand("route", "online routing with norm capacities");
  route->add_option("graph", graph_path)->required();
  route->add_option("events", events_path)->required();
  route->add_option("--max-requests", max_requests,
                    "z variables to declare (default: number of requests)");
  add_solver_flags(route, f);

  std::vector<std::string> batch_paths;
  unsigned jobs = 0;
  auto* batch = app.add_subcommand("batch", "solve several instance files in parallel");
  batch->add_option("instances", batch_paths)->required();
  batch->add_option("-j,--jobs", jobs, "worker threads (default: hardware)");
  add_solver_flags(batch, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  if (*solve) {
    RunResult res;
    if (instance_path == "-") {
      InstanceReader reader(std::cin);
      res = run_solve(reader, f.options());
    } else {
      std::ifstream in = open(instance_path);
      InstanceReader reader(in);
      res = run_solve(reader, f.options());
    }
    emit(dump(res.report), f.output);
    return res.exit_code;
  }

  if (*certify) {
    const Instance inst = read_instance(instance_path);
    std::ifstream in = open(report_path);
    std::stringstream buf;
    buf << in.rdbuf();
    Json old;
    try {
      old = Json::parse(buf.str());
    } catch (const Json::parse_error& e) {
      fail(ErrorCode::kParse, std::string("report: ") + e.what());
    }
    const RunResult res =
        run_solve(inst.header, inst.rows, options_from_report(old));
    const bool same = old.contains("certificate") &&
                      dump(old["certificate"]) == dump(res.report["certificate"]);
    const Json out = {{"kind", "certify"},
                      {"identical", same},
                      {"ok", res.exit_code == kExitOk},
                      {"certificate", res.report["certificate"]}};
    emit(dump(out), f.output);
    return same && res.exit_code == kExitOk ? kExitOk : kExitCertificate;
  }

  if (*oracle) {
    const Instance inst = read_instance(instance_path);
    OracleOptions opt;
    opt.mode = parse_oracle_mode(f.oracle_mode);
    opt.resolution = f.resolution;
    emit(dump(run_oracle(inst.header, inst.rows, opt)), f.output);
    return kExitOk;
  }

  if (*demo) {
    const Instance inst = lower_bound_demo(demo_m);
    std::ostringstream os;
    write_instance(os, inst.header, inst.rows);
    std::string text = os.str();
    text.pop_back();
    emit(text, f.output);
    if (!assertions_path.empty()) {
      emit(dump(lower_bound_assertions(demo_m)), assertions_path);
    }
    return kExitOk;
  }

  if (*bab || *route) {
    std::ifstream gin = open(graph_path);
    const GraphSpec graph = parse_graph(gin);
    std::vector<Event> events;
    if (events_path == "-") {
      events = parse_events(std::cin, graph.nodes);
    } else {
      std::ifstream ein = open(events_path);
      events = parse_events(ein, graph.nodes);
    }
    RunOptions opt = f.options();
    opt.max_requests = max_requests;
    const RunResult res =
        *bab ? run_bab(graph, events, opt) : run_route(graph, events, opt);
    emit(dump(res.report), f.output);
    return res.exit_code;
  }

  // batch
  const unsigned workers = std::max(
      1u, std::min<unsigned>(jobs ? jobs : std::thread::hardware_concurrency(),
                             static_cast<unsigned>(batch_paths.size())));
  std::vector<std::string> lines(batch_paths.size());
  std::vector<int> codes(batch_paths.size(), kExitOk);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < batch_paths.size(); i = next++) {
      Json line = {{"file", batch_paths[i]}};
      try {
        std::ifstream in = open(batch_paths[i]);
        InstanceReader reader(in);
        const RunResult res = run_solve(reader, f.options());
        codes[i] = res.exit_code;
        line["exit"] = res.exit_code;
        line["report"] = res.report;
      } catch (const Error& e) {
        codes[i] = e.code() == ErrorCode::kParse ? kExitParse : kExitError;
        line["exit"] = codes[i];
        line["error"] = e.what();
      }
      lines[i] = dump(line);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (std::thread& t : pool) t.join();
  std::string text;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) text += '\n';
    text += lines[i];
  }
  emit(text, f.output);
  int worst = kExitOk;
  for (int c : codes) worst = std::max(worst, c);
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const lqcover::Error& e) {
    std::cerr << "lqcover: " << e.what() << '\n';
    return e.code() == lqcover::ErrorCode::kParse ? kExitParse : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "lqcover: " << e.what() << '\n';
    return kExitError;
  }
}
