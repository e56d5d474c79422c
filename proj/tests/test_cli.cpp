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

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "lqcover/cli/generators.hpp"
#include "lqcover/cli/io.hpp"
#include "lqcover/cli/report.hpp"
#include "lqcover/cli/runner.hpp"

using namespace lqcover;
using namespace lqcover::cli;
using doctest::Approx;

namespace {

std::string error_text(auto&& fn, ErrorCode expected) {
  try {
    fn();
  } catch (const Error& e) {
    CHECK(e.code() == expected);
    return e.what();
  }
  FAIL("expected an lqcover::Error");
  return {};
}

RunResult solve_text(const std::string& text, RunOptions opt = {}) {
  std::istringstream in(text);
  InstanceReader reader(in);
  return run_solve(reader, opt);
}

}  // namespace

TEST_CASE("instance text round trip") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = random_instance(700 + seed);
    std::ostringstream out;
    write_instance(out, inst.header, inst.rows);
    std::istringstream in(out.str());
    InstanceReader reader(in);
    CHECK(format_header(reader.header()) == format_header(inst.header));
    std::size_t k = 0;
    while (auto row = reader.next()) {
      REQUIRE(k < inst.rows.size());
      CHECK(format_row(*row) == format_row(inst.rows[k]));
      for (std::size_t j = 0; j < row->entries.size(); ++j)
        CHECK(row->entries[j].coeff == inst.rows[k].entries[j].coeff);
      ++k;
    }
    CHECK(k == inst.rows.size());
  }
}

TEST_CASE("parse errors carry their location") {
  const std::string header = format_header(closed_form_instance().header);
  std::istringstream bad(header + "\n\n{\"entries\":[[0,1],[0,1]]}\n");
  InstanceReader reader(bad);
  const std::string msg =
      error_text([&] { reader.next(); }, ErrorCode::kParse);
  CHECK(msg.find("line 3") != std::string::npos);

  std::istringstream junk("not json\n");
  error_text([&] { InstanceReader r(junk); }, ErrorCode::kParse);

  std::istringstream events("pair 0 1\n# comment\npair 0 9\n");
  const std::string ev = error_text([&] { parse_events(events, 2); }, ErrorCode::kParse);
  CHECK(ev.find("event 1") != std::string::npos);
}

TEST_CASE("graph text round trip") {
  const GraphSpec g = routing_fixture();
  std::istringstream in(format_graph(g));
  const GraphSpec back = parse_graph(in);
  CHECK(back.nodes == g.nodes);
  REQUIRE(back.edges.size() == g.edges.size());
  REQUIRE(back.groups.size() == g.groups.size());
  CHECK(std::isinf(back.groups[1].p));
  CHECK(back.groups[2].edges == g.groups[2].edges);
  CHECK(format_graph(back) == format_graph(g));

  std::istringstream loop(R"({"nodes": 2, "edges": [[1, 1]]})");
  error_text([&] { parse_graph(loop); }, ErrorCode::kParse);
}

TEST_CASE("report numbers") {
  Json j = {{"x", 0.1}, {"inf", kInfinity}};
  const std::string text = dump(j);
  CHECK(text.find("0.10000000000000001") != std::string::npos);
  CHECK(text.find("\"inf\"") != std::string::npos);
  const Json back = Json::parse(text);
  CHECK(back["x"].get<double>() == 0.1);
  CHECK(std::isinf(number_or_inf(back["inf"])));
}

TEST_CASE("closed form report") {
  const Instance inst = closed_form_instance();
  std::ostringstream text;
  write_instance(text, inst.header, inst.rows);
  const RunResult r = solve_text(text.str());
  CHECK(r.exit_code == kExitOk);
  CHECK(r.report["certificate"]["primal"].get<double>() == Approx(1.0).epsilon(1e-5));
  CHECK(r.report["certificate"]["dual"].get<double>() ==
        Approx(std::log(2.0)).epsilon(1e-5));
  CHECK_FALSE(r.report.contains("wall_seconds"));

  RunOptions timed;
  timed.timing = true;
  CHECK(solve_text(text.str(), timed).report.contains("wall_seconds"));
}

TEST_CASE("empty row stream") {
  const RunResult r = solve_text(format_header(closed_form_instance().header) + "\n");
  CHECK(r.exit_code == kExitOk);
  CHECK(r.report["certificate"]["primal"].get<double>() == 0.0);
  CHECK(r.report["certificate"]["dual"].get<double>() == 0.0);
  CHECK(r.report["certificate"]["certified_ratio"].get<double>() == 1.0);
}

TEST_CASE("l2 block family through the text pipe") {
  const Instance demo = lower_bound_demo(16);
  std::ostringstream text;
  write_instance(text, demo.header, demo.rows);
  const RunResult r = solve_text(text.str());
  const auto x = r.report["solution"].get<std::vector<double>>();
  REQUIRE(x.size() == 256);
  for (double v : x) CHECK(v == Approx(1.0 / 16).epsilon(1e-4));
}

TEST_CASE("reports are deterministic and replayable") {
  const Instance inst = random_instance(123);
  const RunResult a = run_solve(inst.header, inst.rows, {});
  const RunResult b = run_solve(inst.header, inst.rows, {});
  CHECK(dump(a.report) == dump(b.report));

  const RunOptions replay = options_from_report(a.report);
  const RunResult c = run_solve(inst.header, inst.rows, replay);
  CHECK(dump(c.report["certificate"]) == dump(a.report["certificate"]));
}

TEST_CASE("graph runners") {
  const GraphSpec g = routing_fixture();
  const std::vector<Event> events = routing_fixture_requests(30);
  RunOptions opt;
  opt.max_requests = 30;
  opt.seed = 9;
  const RunResult a = run_route(g, events, opt);
  const RunResult b = run_route(g, events, opt);
  CHECK(a.exit_code == kExitOk);
  CHECK(dump(a.report) == dump(b.report));
  CHECK(a.report["rounding"]["seed"].get<std::uint64_t>() == 9);

  const GraphSpec two = two_node_graph(2.0, 1.0);
  const std::vector<Event> pair{{EventKind::kPair, 0, 1}};
  const RunResult bab = run_bab(two, pair, {});
  CHECK(bab.exit_code == kExitOk);
  CHECK(run_bab(two, {}, {}).exit_code == kExitOk);
}

TEST_CASE("oracle runner") {
  const Instance inst = closed_form_instance();
  OracleOptions opt;
  const Json j = run_oracle(inst.header, inst.rows, opt);
  CHECK(j["value"].get<double>() == Approx(1.0).epsilon(1e-9));
}
