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
#include "lqcover/model.hpp"
#include "lqcover/power_sum.hpp"

using namespace lqcover;
using doctest::Approx;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an lqcover::Error");
  return ErrorCode::kInvalidArgument;
}

// Scalar evaluator written independently of lq_norm.
double brute_objective(const InstanceHeader& h, const std::vector<double>& x) {
  double f = 0.0;
  for (const NormTerm& t : h.terms) {
    double s = 0.0;
    for (std::size_t i : t.set) s += std::pow(x[i], t.exponent);
    f += t.weight * std::pow(s, 1.0 / t.exponent);
  }
  return f;
}

InstanceHeader one_term(std::vector<std::size_t> set, double c, double q,
                        std::size_t n) {
  InstanceHeader h;
  h.n = n;
  h.d = std::max<std::size_t>(set.size(), 1);
  h.terms.push_back({std::move(set), c, q});
  return h;
}

}  // namespace

TEST_CASE("dual exponents") {
  CHECK(dual_exponent(2.0) == 2.0);
  CHECK(std::isinf(dual_exponent(1.0)));
  CHECK(dual_exponent(1.5) == Approx(3.0).epsilon(1e-15));
  CHECK(code_of([] { dual_exponent(0.5); }) == ErrorCode::kInvalidExponent);
  CHECK(code_of([] { dual_exponent(kInfinity); }) == ErrorCode::kInvalidExponent);
}

TEST_CASE("objective values") {
  const InstanceHeader h = one_term({0, 1}, 1.0, 2.0, 2);
  CHECK(eval_objective(h, std::vector<double>{3, 4}) == Approx(5.0).epsilon(1e-15));
  CHECK(eval_objective(h, std::vector<double>{0, 0}) == 0.0);

  InstanceHeader two;
  two.n = 3;
  two.d = 2;
  two.terms = {{{0}, 1.0, 1.0}, {{1, 2}, 2.0, 2.0}};
  const std::vector<double> ones{1, 1, 1};
  CHECK(eval_objective(two, ones) ==
        Approx(1.0 + 2.0 * std::numbers::sqrt2).epsilon(1e-14));
  CHECK(eval_objective(two, ones) == Approx(brute_objective(two, ones)));

  CHECK(code_of([&] { eval_objective(h, std::vector<double>{-1, 0}); }) ==
        ErrorCode::kDomain);
  CHECK(code_of([&] { eval_objective(h, std::vector<double>{1}); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("gradient values") {
  const InstanceHeader h = one_term({0, 1}, 1.0, 2.0, 2);
  const auto g = eval_gradient(h, std::vector<double>{3, 4});
  CHECK(g[0] == Approx(0.6).epsilon(1e-15));
  CHECK(g[1] == Approx(0.8).epsilon(1e-15));

  const InstanceHeader lin = one_term({0}, 5.0, 1.0, 1);
  CHECK(eval_gradient(lin, std::vector<double>{0.37})[0] == 5.0);

  const InstanceHeader cube = one_term({0, 1}, 2.0, 3.0, 2);
  const std::vector<double> x{1, 1};
  const auto gc = eval_gradient(cube, x);
  CHECK(gc[0] == Approx(std::cbrt(2.0)).epsilon(1e-14));
  // central differences, h = 1e-6
  std::vector<double> xp = x, xm = x;
  xp[0] += 1e-6;
  xm[0] -= 1e-6;
  const double fd = (eval_objective(cube, xp) - eval_objective(cube, xm)) / 2e-6;
  CHECK(gc[0] == Approx(fd).epsilon(1e-6));

  CHECK(code_of([&] { eval_gradient(cube, std::vector<double>{0, 1}); }) ==
        ErrorCode::kSingularGradient);
}

TEST_CASE("uncosted and zero-weight variables have zero gradient") {
  InstanceHeader h;
  h.n = 3;
  h.d = 1;
  h.terms = {{{0}, 0.0, 2.0}, {{1}, 1.0, 2.0}};
  const auto g = eval_gradient(h, std::vector<double>{0.5, 0.5, 0.5});
  CHECK(g[0] == 0.0);
  CHECK(g[1] == Approx(1.0));
  CHECK(g[2] == 0.0);
  const GroupIndex idx(h);
  CHECK_FALSE(idx.costed(0));
  CHECK(idx.costed(1));
  CHECK(idx.term_of(2) == GroupIndex::kUncosted);
}

TEST_CASE("log-domain and direct norms agree") {
  cli::Draw draw(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(draw.pick(1, 8));
    for (double& x : v) x = draw.uniform(1e-3, 10.0);
    for (double q : {1.5, 2.0, 3.0, 7.0, 10.0}) {
      const double a = detail::lq_norm_direct(v, q);
      const double b = detail::lq_norm_log(v, q);
      CHECK(std::abs(a - b) <= 1e-10 * a);
    }
  }
  // A q where the direct sum would underflow.
  const std::vector<double> tiny{1e-30, 2e-30};
  CHECK(lq_norm(tiny, 20.0) == Approx(2e-30 * std::pow(1.0 + std::pow(0.5, 20.0), 0.05)));
}

TEST_CASE("objective is monotone") {
  cli::Draw draw(8);
  for (int trial = 0; trial < 100; ++trial) {
    const cli::Instance inst = cli::random_instance(100 + trial);
    std::vector<double> x(inst.header.n), y(inst.header.n);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = draw.uniform(0.0, 1.0);
      y[i] = x[i] + (draw.chance(0.5) ? draw.uniform(0.0, 1.0) : 0.0);
    }
    CHECK(eval_objective(inst.header, x) <= eval_objective(inst.header, y));
  }
}

TEST_CASE("header validation") {
  InstanceHeader h = one_term({0, 1}, 1.0, 2.0, 2);
  h.d = 1;
  CHECK(code_of([&] { h.validate(); }) == ErrorCode::kInvalidArgument);

  InstanceHeader overlap;
  overlap.n = 3;
  overlap.d = 2;
  overlap.terms = {{{0, 1}, 1.0, 1.0}, {{1, 2}, 1.0, 1.0}};
  overlap.disjoint = true;
  CHECK(code_of([&] { overlap.validate(); }) == ErrorCode::kInvalidArgument);
  overlap.disjoint = false;
  overlap.validate();
  CHECK(code_of([&] { GroupIndex g(overlap); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("instance statistics") {
  InstanceHeader h;
  h.n = 2;
  h.d = 2;
  h.a_max = 4.0;
  h.terms = {{{0}, 1.0, 1.0}, {{1}, 1.0, 1.0}};
  const std::vector<CoveringConstraint> one{{{{0, 1.0}, {1, 1.0}}}};
  InstanceStats s = instance_stats(h, one);
  CHECK(s.d_observed == 2);
  CHECK(s.rho_observed == 1.0);

  const std::vector<CoveringConstraint> mixed{{{{0, 1.0}}}, {{{1, 4.0}}}};
  s = instance_stats(h, mixed);
  CHECK(s.rho_observed == 4.0);

  // The l2 block family: rows have m entries, the single term has m^2.
  const cli::Instance demo = cli::lower_bound_demo(4);
  s = instance_stats(demo.header, demo.rows);
  CHECK(s.row_sparsity == 4);
  CHECK(s.d_observed == 16);
  CHECK(s.rho_observed == 1.0);

  const std::vector<CoveringConstraint> too_big{{{{0, 8.0}}}};
  CHECK(code_of([&] { instance_stats(h, too_big); }) ==
        ErrorCode::kHeaderViolation);
  h.d = 1;
  h.terms = {{{0}, 1.0, 1.0}};
  CHECK(code_of([&] { instance_stats(h, one); }) == ErrorCode::kHeaderViolation);

  const std::vector<CoveringConstraint> dup{{{{0, 1.0}, {0, 1.0}}}};
  h.d = 2;
  CHECK(code_of([&] { instance_stats(h, dup); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("power sums track the direct sum") {
  cli::Draw draw(77);
  std::vector<double> v(6);
  for (double& x : v) x = draw.uniform(1e-6, 1e-5);
  PowerSum ps(3.0, v);
  for (int step = 0; step < 100000; ++step) {
    const std::size_t i = draw.pick(0, v.size() - 1);
    const double next = v[i] * (1.0 + 1e-3 * draw.uniform());
    ps.update(v[i], next);
    v[i] = next;
    if (ps.needs_rebuild()) ps.rebuild(v);
  }
  CHECK(ps.norm() == Approx(detail::lq_norm_direct(v, 3.0)).epsilon(1e-9));
}
