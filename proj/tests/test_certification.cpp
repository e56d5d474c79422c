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
#include "lqcover/certification.hpp"
#include "lqcover/cli/generators.hpp"
#include "lqcover/oracle.hpp"
#include "lqcover/reduction.hpp"

using namespace lqcover;
using doctest::Approx;

namespace {

InstanceHeader hyperplane_header() {
  InstanceHeader h;
  h.n = 2;
  h.d = 2;
  h.terms.push_back({{0, 1}, 1.0, 2.0});
  return h;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an lqcover::Error");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("dual violation") {
  const InstanceHeader h = hyperplane_header();
  DualViolation v = dual_violation(h, std::vector<double>{0, 0});
  CHECK(v.max == 0.0);

  v = dual_violation(h, std::vector<double>{3, 4});
  CHECK(v.max == Approx(5.0));

  InstanceHeader zero;
  zero.n = 2;
  zero.d = 1;
  zero.terms = {{{0}, 0.0, 2.0}, {{1}, 2.0, 1.0}};
  v = dual_violation(zero, std::vector<double>{7, 1});
  CHECK(v.max == Approx(0.5));
  REQUIRE(v.zero_weight_terms.size() == 1);
  CHECK(v.zero_weight_terms[0] == 0);
  CHECK(v.zero_weight_norms[0] == Approx(7.0));
}

TEST_CASE("violation bound") {
  InstanceHeader h = hyperplane_header();
  // d * rho = 2 is floored at e.
  CHECK(violation_bound(h) == Approx(7.0));
  h.d = 10;
  h.a_min = 0.5;
  h.a_max = 2.0;
  CHECK(violation_bound(h) == Approx(1.0 + 6.0 * std::log(40.0)));
}

TEST_CASE("certificate of an empty run") {
  const OnlineSolver s(hyperplane_header());
  const Certificate c = certified_ratio(s);
  CHECK(c.certified_ratio == 1.0);
  CHECK(c.primal == 0.0);
  CHECK(c.dual == 0.0);
  CHECK(c.chain.dual_sum == 0.0);
  CHECK(c.chain.holder == 0.0);
  CHECK(c.ok());
}

TEST_CASE("closed form certificate") {
  const cli::Instance inst = cli::closed_form_instance();
  OnlineSolver s(inst.header);
  s.process_constraint(inst.rows[0]);
  const Certificate c = certified_ratio(s);
  const double y = std::log(2.0 / (1.0 + s.delta()));
  CHECK(c.dual == Approx(y).epsilon(1e-12));
  CHECK(c.violation == Approx(y).epsilon(1e-12));
  CHECK(c.primal == Approx(1.0 - s.delta()).epsilon(1e-9));
  // The offset costs exactly delta against a ratio of 1.
  CHECK(c.certified_ratio == Approx(1.0 - s.delta()).epsilon(1e-9));
  CHECK(c.lower_bound == Approx(1.0).epsilon(1e-12));
  CHECK(c.chain.dual_sum == Approx(y));
  CHECK(c.chain.y_ax == Approx(y));
  CHECK(c.chain.mu_x == Approx(y));
  CHECK(c.chain.holder == Approx(y));
  CHECK(c.ok());
}

TEST_CASE("duality chain") {
  const InstanceHeader h = hyperplane_header();
  const std::vector<CoveringConstraint> rows{{{{0, 1.0}, {1, 1.0}}}};
  // Symmetric point: Hoelder holds with equality.
  const std::vector<double> x{0.5, 0.5}, y{0.7}, mu{0.7, 0.7};
  const DualityChain chain = weak_duality_check(h, rows, x, y, mu);
  CHECK(chain.mu_x == Approx(chain.holder).epsilon(1e-14));
  CHECK(check_duality_chain(chain).empty());

  // An infeasible x breaks y <= y^T A x.
  const std::vector<double> short_x{0.1, 0.1};
  CHECK(code_of([&] { weak_duality_check(h, rows, short_x, y, mu); }) ==
        ErrorCode::kCertificateFailure);

  DualityChain broken{1.0, 0.5, 0.5, 0.5};
  CHECK(check_duality_chain(broken).size() == 1);
}

TEST_CASE("certificates across the corpus") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const cli::Instance inst = cli::random_instance(6000 + seed);
    OnlineSolver s(inst.header);
    for (const auto& row : inst.rows) s.process_constraint(row);
    const Certificate c = evaluate_certificate(s);
    CHECK(c.ok());
    CHECK(c.pd_gap <= c.pd_gap_limit);
    CHECK(c.violation <= c.bound);
    CHECK(c.certified_ratio <= c.pd_gap_limit * c.bound);
  }
}

TEST_CASE("scaling the weights scales primal and dual") {
  const cli::Instance inst = cli::random_instance(31);
  InstanceHeader scaled = inst.header;
  for (NormTerm& t : scaled.terms) t.weight *= 3.0;
  SolverConfig cfg;
  cfg.delta = default_delta(inst.header);
  OnlineSolver a(inst.header, cfg), b(scaled, cfg);
  for (const auto& row : inst.rows) {
    a.process_constraint(row);
    b.process_constraint(row);
  }
  const Certificate ca = evaluate_certificate(a), cb = evaluate_certificate(b);
  CHECK(cb.primal == Approx(3.0 * ca.primal).epsilon(1e-9));
  CHECK(cb.dual == Approx(3.0 * ca.dual).epsilon(1e-9));
  CHECK(cb.violation == Approx(ca.violation).epsilon(1e-9));
  CHECK(cb.certified_ratio == Approx(ca.certified_ratio).epsilon(1e-9));
}

TEST_CASE("oracle on small closed forms") {
  const InstanceHeader h = hyperplane_header();
  const std::vector<CoveringConstraint> plane{{{{0, 1.0}, {1, 1.0}}}};
  for (OracleMode mode : {OracleMode::kGrid, OracleMode::kSubgradient}) {
    OracleOptions opt;
    opt.mode = mode;
    const OracleResult r = offline_oracle(h, plane, opt);
    CHECK(r.value == Approx(std::numbers::sqrt2 / 2).epsilon(1e-6));
    CHECK(r.argmin[0] == Approx(0.5).epsilon(1e-2));

    const std::vector<CoveringConstraint> first{{{{0, 1.0}}}};
    CHECK(offline_oracle(h, first, opt).value == Approx(1.0).epsilon(1e-6));

    CHECK(offline_oracle(h, std::vector<CoveringConstraint>{}, opt).value == 0.0);
  }
  const std::vector<CoveringConstraint> empty_row{CoveringConstraint{}};
  CHECK(code_of([&] { offline_oracle(h, empty_row); }) == ErrorCode::kInfeasible);
}

TEST_CASE("oracle frozen value with a shared cheap variable") {
  InstanceHeader h;
  h.n = 3;
  h.d = 2;
  h.terms = {{{0, 1}, 1.0, 2.0}, {{2}, 2.0, 1.0}};
  const std::vector<CoveringConstraint> rows{{{{0, 1.0}, {2, 1.0}}},
                                             {{{1, 1.0}, {2, 1.0}}}};
  const OracleResult grid = offline_oracle(h, rows);
  CHECK(grid.value == Approx(1.4142135623730951).epsilon(1e-12));
  OracleOptions sub;
  sub.mode = OracleMode::kSubgradient;
  CHECK(offline_oracle(h, rows, sub).value == Approx(std::numbers::sqrt2).epsilon(1e-6));
}

TEST_CASE("oracle modes agree on tiny instances") {
  cli::CorpusParams p;
  p.max_n = 4;
  p.max_rows = 6;
  p.max_d = 4;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const cli::Instance inst = cli::random_instance(8000 + seed, p);
    OracleOptions sub;
    sub.mode = OracleMode::kSubgradient;
    const double g = offline_oracle(inst.header, inst.rows).value;
    const double s = offline_oracle(inst.header, inst.rows, sub).value;
    CHECK(std::abs(g - s) <= 1e-2 * std::max(1.0, g));

    OnlineSolver solver(inst.header);
    for (const auto& row : inst.rows) solver.process_constraint(row);
    const Certificate c = evaluate_certificate(solver);
    const double opt = std::min(g, s);
    CHECK(c.lower_bound <= opt * (1 + 1e-2) + 1e-9);
    CHECK(opt <= c.primal + c.f_offset + 1e-9);
  }
}

TEST_CASE("oracle mode names") {
  CHECK(parse_oracle_mode("grid") == OracleMode::kGrid);
  CHECK(parse_oracle_mode("subgrad") == OracleMode::kSubgradient);
  CHECK(parse_oracle_mode("subgradient") == OracleMode::kSubgradient);
  CHECK(to_string(OracleMode::kSubgradient) == "subgrad");
  CHECK_THROWS_AS(parse_oracle_mode("simplex"), Error);
}
