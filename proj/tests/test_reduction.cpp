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
#include <vector>

#include "doctest.h"
#include "lqcover/certification.hpp"
#include "lqcover/cli/generators.hpp"
#include "lqcover/reduction.hpp"

using namespace lqcover;
using doctest::Approx;

namespace {

InstanceHeader shared_pair() {
  InstanceHeader h;
  h.n = 3;
  h.d = 2;
  h.disjoint = false;
  h.terms = {{{0, 1}, 1.0, 2.0}, {{1, 2}, 1.0, 2.0}};
  return h;
}

}  // namespace

TEST_CASE("duplication gives one copy per membership") {
  const auto [dup, map] = duplicate(shared_pair());
  CHECK(dup.n == 4);
  CHECK(dup.disjoint);
  CHECK(sets_are_disjoint(dup));
  CHECK_FALSE(map.identity());
  CHECK(map.copies_of(0).size() == 1);
  CHECK(map.copies_of(1).size() == 2);
  CHECK(map.copies_of(2).size() == 1);
  CHECK(map.max_copies() == 2);
  for (std::size_t c : map.copies_of(1)) CHECK(map.copy(c).original == 1);
}

TEST_CASE("r terms sharing a variable give r copies") {
  for (std::size_t r = 1; r <= 5; ++r) {
    InstanceHeader h;
    h.n = 1;
    h.d = 1;
    h.disjoint = r == 1;
    for (std::size_t e = 0; e < r; ++e) h.terms.push_back({{0}, 1.0, 1.0 + e});
    const auto [dup, map] = duplicate(h);
    CHECK(map.copies_of(0).size() == r);
    CHECK(dup.n == r);
  }
}

TEST_CASE("disjoint input maps to itself") {
  const cli::Instance inst = cli::random_instance(11);
  const auto [dup, map] = duplicate(inst.header);
  CHECK(map.identity());
  CHECK(dup.n == inst.header.n);
  CHECK(dup.terms == inst.header.terms);
}

TEST_CASE("projection doubles the smallest copy") {
  const auto [dup, map] = duplicate(shared_pair());
  std::vector<double> copies(dup.n, 0.0);
  copies[map.copies_of(0)[0]] = 0.4;
  copies[map.copies_of(1)[0]] = 0.3;
  copies[map.copies_of(1)[1]] = 0.5;
  copies[map.copies_of(2)[0]] = 0.0;
  const std::vector<double> x = project_solution(copies, map);
  CHECK(x[0] == Approx(0.8));
  CHECK(x[1] == Approx(0.6));
  CHECK(x[2] == 0.0);
}

TEST_CASE("two terms on one variable") {
  InstanceHeader h;
  h.n = 1;
  h.d = 1;
  h.disjoint = false;
  h.terms = {{{0}, 1.0, 1.0}, {{0}, 1.0, 1.0}};
  ReducedSolver rs(h);
  const ReductionTrace t = rs.process_general_constraint({{{0, 1.0}}});
  CHECK(t.inner_iterations == 2);
  for (const StepTrace& s : t.steps)
    CHECK(s.tau == Approx(std::log(2.0 / (1.0 + rs.solver().delta()))).epsilon(1e-9));
  const std::vector<double> mins = rs.min_copies();
  CHECK(mins[0] >= 0.5);
  CHECK(mins[0] == Approx(1.0).epsilon(1e-9));
  const std::vector<double> x = rs.solution();
  CHECK(x[0] == Approx(2.0).epsilon(1e-9));
  CHECK(rs.projection_factor() == 2.0);
  CHECK(eval_objective(h, x) <= 2.0 * rs.solver().objective() * (1 + 1e-12));
}

TEST_CASE("disjoint input runs the plain solver") {
  const cli::Instance inst = cli::random_instance(17);
  ReducedSolver rs(inst.header);
  OnlineSolver plain(inst.header);
  for (const auto& row : inst.rows) {
    const ReductionTrace t = rs.process_general_constraint(row);
    const StepTrace direct = plain.process_constraint(row);
    REQUIRE(t.inner_iterations == 1);
    CHECK(t.steps[0].tau == direct.tau);
    CHECK(t.steps[0].steps == direct.steps);
  }
  CHECK(rs.solution() == plain.state().x);
  CHECK(rs.projection_factor() == 1.0);
}

TEST_CASE("projected solutions stay feasible on overlapping instances") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const cli::Instance inst = cli::overlapping_instance(3000 + seed);
    ReducedSolver rs(inst.header);
    std::size_t iterations = 0;
    for (const auto& row : inst.rows)
      iterations += rs.process_general_constraint(row).inner_iterations;
    CHECK(iterations <= rs.iteration_bound() * inst.rows.size());
    const std::vector<double> x = rs.solution();
    for (const auto& row : inst.rows) CHECK(row.lhs(x) >= 1.0 - 1e-9);
    const Certificate cert = evaluate_certificate(rs);
    CHECK(cert.ok());
  }
}
