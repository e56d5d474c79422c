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
#include <numbers>
#include <vector>

#include "doctest.h"
#include "lqcover/cli/generators.hpp"
#include "lqcover/error.hpp"
#include "lqcover/solver.hpp"

using namespace lqcover;
using doctest::Approx;

namespace {

InstanceHeader single(double q) {
  InstanceHeader h;
  h.n = 1;
  h.d = 1;
  h.terms.push_back({{0}, 1.0, q});
  return h;
}

CoveringConstraint unit_row(std::size_t i) { return {{{i, 1.0}}}; }

// Closed-form y for min x s.t. x >= 1 started at delta.
double closed_form_y(double delta) { return std::log(2.0 / (1.0 + delta)); }

double euler_error(double eta) {
  SolverConfig cfg;
  cfg.eta = eta;
  cfg.exact_linear_fast_path = false;
  OnlineSolver s(single(1.0), cfg);
  const StepTrace t = s.process_constraint(unit_row(0));
  return std::abs(t.tau - closed_form_y(s.delta()));
}

}  // namespace

TEST_CASE("initial state") {
  InstanceHeader h;
  h.n = 3;
  h.d = 2;
  h.terms.push_back({{0, 1}, 1.0, 2.0});
  SolverConfig cfg;
  cfg.delta = 1e-12;
  const OnlineSolver s(h, cfg);
  CHECK(s.state().x[0] == 1e-12);
  CHECK(s.state().x[1] == 1e-12);
  CHECK(s.state().x[2] == 0.0);
  CHECK(s.state().f_offset == Approx(std::numbers::sqrt2 * 1e-12).epsilon(1e-12));
  CHECK(s.state().primal_value == 0.0);
  CHECK(s.state().dual_value == 0.0);

  CHECK(default_delta(h) == Approx(1e-6 / 12.0).epsilon(1e-15));
  const OnlineSolver defaulted(h);
  CHECK(defaulted.delta() == default_delta(h));
}

TEST_CASE("config validation") {
  SolverConfig cfg;
  cfg.eta = 0.0;
  CHECK_THROWS_AS(OnlineSolver(single(1.0), cfg), Error);
  cfg.eta = 1e-3;
  cfg.delta = -1.0;
  CHECK_THROWS_AS(OnlineSolver(single(1.0), cfg), Error);
}

TEST_CASE("closed form row, exact and Euler paths") {
  for (bool fast : {true, false}) {
    SolverConfig cfg;
    cfg.exact_linear_fast_path = fast;
    OnlineSolver s(single(1.0), cfg);
    const StepTrace t = s.process_constraint(unit_row(0));
    CHECK(t.fast_path == fast);
    CHECK(t.lhs >= 1.0);
    CHECK(t.lhs <= 1.0 + 10 * cfg.lhs_tol);
    CHECK(s.state().y[0] == t.tau);
    const double tol = fast ? 1e-12 : 2e-4;
    CHECK(std::abs(t.tau - closed_form_y(s.delta())) <= tol);
    if (!fast) {
      CHECK(t.steps >= 5'000);
      CHECK(t.steps <= 50'000);
    }
  }
}

TEST_CASE("Euler error is first order in eta") {
  const double coarse = euler_error(2e-3);
  const double fine = euler_error(1e-3);
  const double ratio = coarse / fine;
  CHECK(ratio > 1.7);
  CHECK(ratio < 2.3);
}

TEST_CASE("already satisfied row gets a zero dual") {
  OnlineSolver s(single(1.0));
  s.process_constraint(unit_row(0));
  const double before = s.state().x[0];
  const StepTrace t = s.process_constraint(unit_row(0));
  CHECK(t.already_satisfied);
  CHECK(t.tau == 0.0);
  CHECK(t.steps == 0);
  CHECK(s.state().x[0] == before);
  CHECK(s.state().y.size() == 2);
}

TEST_CASE("uncosted variables take the minimal fill") {
  InstanceHeader h;
  h.n = 2;
  h.d = 2;
  h.terms.push_back({{1}, 1.0, 2.0});
  OnlineSolver s(h);
  const StepTrace t = s.process_constraint({{{0, 1.0}, {1, 1.0}}});
  CHECK(t.saturated_uncosted);
  CHECK(t.tau == 0.0);
  CHECK(s.state().x[0] == Approx(1.0 - s.delta()).epsilon(1e-15));
  CHECK(s.state().x[1] == s.delta());
  CHECK(s.state().saturation_events == 1);
}

TEST_CASE("block rows of the l2 family end at 1/m") {
  const cli::Instance demo = cli::lower_bound_demo(4);
  OnlineSolver s(demo.header);
  for (const auto& row : demo.rows) s.process_constraint(row);
  for (double x : s.state().x) CHECK(x == Approx(0.25).epsilon(1e-5));
}

TEST_CASE("step selection stops inside the termination band") {
  InstanceHeader h = single(2.0);
  SolverConfig cfg;
  cfg.delta = 1e-3;
  OnlineSolver s(h, cfg);
  const CoveringConstraint row = unit_row(0);
  // Single-variable l2 term: grad = 1, so x advances by dtau * (x + 1).
  const double x0 = s.state().x[0];
  s.integrate_step(row, (1.0 - 1e-12 - x0) / (x0 + 1.0));
  CHECK(row.lhs(s.state().x) < 1.0);
  CHECK(row.lhs(s.state().x) == Approx(1.0).epsilon(1e-11));
  const double dtau = s.choose_step(row);
  CHECK(dtau > 0.0);
  s.integrate_step(row, dtau);
  const double lhs = row.lhs(s.state().x);
  CHECK(lhs >= 1.0);
  CHECK(lhs <= 1.0 + 10 * cfg.lhs_tol);
}

TEST_CASE("far from the boundary a step grows no variable beyond 1 + eta") {
  InstanceHeader h;
  h.n = 3;
  h.d = 3;
  h.terms.push_back({{0, 1, 2}, 1.0, 3.0});
  OnlineSolver s(h);
  const CoveringConstraint row{{{0, 1.0}, {1, 2.0}, {2, 0.5}}};
  const std::vector<double> before = s.state().x;
  s.integrate_step(row, s.choose_step(row));
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(s.state().x[i] > before[i]);
    CHECK(s.state().x[i] <= before[i] * (1.0 + s.config().eta) * (1.0 + 1e-12));
  }
}

TEST_CASE("variables outside the row do not move") {
  InstanceHeader h;
  h.n = 3;
  h.d = 3;
  h.terms.push_back({{0, 1, 2}, 1.0, 2.0});
  OnlineSolver s(h);
  s.process_constraint({{{0, 1.0}, {1, 1.0}}});
  CHECK(s.state().x[2] == s.delta());
  // Symmetric row over symmetric variables keeps them equal.
  CHECK(s.state().x[0] == s.state().x[1]);
}

TEST_CASE("invariants across a random corpus") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const cli::Instance inst = cli::random_instance(2000 + seed);
    OnlineSolver s(inst.header);
    const double eta = s.config().eta;
    for (const auto& row : inst.rows) {
      const std::vector<double> before = s.state().x;
      const StepTrace t = s.process_constraint(row);
      const SolverState& st = s.state();
      for (std::size_t i = 0; i < before.size(); ++i) REQUIRE(st.x[i] >= before[i]);
      REQUIRE(t.tau >= 0.0);
      REQUIRE(t.lhs >= 1.0 - s.config().lhs_tol);
      REQUIRE(st.primal_value <= 2.0 * (1 + eta) * (1 + eta) * st.dual_value +
                                     1e-12);
      const std::vector<double> mu = s.recompute_mu();
      for (std::size_t i = 0; i < mu.size(); ++i)
        REQUIRE(std::abs(mu[i] - st.mu[i]) <= 1e-9 * std::max(1.0, mu[i]));
    }
    CHECK(s.objective() ==
          Approx(eval_objective(inst.header, s.state().x)).epsilon(1e-9));
  }
}

TEST_CASE("runs are deterministic") {
  const cli::Instance inst = cli::random_instance(4242);
  OnlineSolver a(inst.header), b(inst.header);
  for (const auto& row : inst.rows) {
    const StepTrace ta = a.process_constraint(row);
    const StepTrace tb = b.process_constraint(row);
    CHECK(ta.tau == tb.tau);
    CHECK(ta.steps == tb.steps);
  }
  CHECK(a.state().x == b.state().x);
  CHECK(a.state().y == b.state().y);
}

TEST_CASE("rows outside the header bounds are rejected") {
  OnlineSolver s(single(1.0));
  try {
    s.process_constraint({{{0, 2.0}}});
    FAIL("expected a header violation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kHeaderViolation);
  }
  CHECK(s.state().y.empty());
}

TEST_CASE("step budget exhaustion reports the partial trace") {
  SolverConfig cfg;
  cfg.exact_linear_fast_path = false;
  cfg.max_steps_per_constraint = 5;
  OnlineSolver s(single(1.0), cfg);
  try {
    s.process_constraint(unit_row(0));
    FAIL("expected an integration failure");
  } catch (const IntegrationFailure& e) {
    CHECK(e.code() == ErrorCode::kIntegrationFailure);
    CHECK(e.partial().steps == 5);
    CHECK(e.partial().lhs < 1.0);
  }
}
