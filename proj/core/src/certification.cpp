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

#include "lqcover/certification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lqcover/error.hpp"

namespace lqcover {

DualViolation dual_violation(const InstanceHeader& header,
                             std::span<const double> mu) {
  if (mu.size() != header.n) {
    fail(ErrorCode::kInvalidArgument, "mu has the wrong length");
  }
  DualViolation out;
  out.per_term.assign(header.terms.size(), 0.0);
  std::vector<double> buf;
  for (std::size_t e = 0; e < header.terms.size(); ++e) {
    const NormTerm& t = header.terms[e];
    buf.clear();
    for (std::size_t i : t.set) buf.push_back(mu[i]);
    const double norm = lq_norm(buf, t.dual());
    if (!t.costed()) {
      out.zero_weight_terms.push_back(e);
      out.zero_weight_norms.push_back(norm);
      continue;
    }
    out.per_term[e] = norm / t.weight;
    out.max = std::max(out.max, out.per_term[e]);
  }
  return out;
}

namespace {

bool leq(double a, double b, double tol) {
  return a <= b + tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

DualityChain compute_chain(const InstanceHeader& header,
                           std::span<const CoveringConstraint> rows,
                           std::span<const double> x,
                           std::span<const double> y,
                           std::span<const double> mu) {
  if (rows.size() != y.size()) {
    fail(ErrorCode::kInvalidArgument, "one dual value per row expected");
  }
  if (x.size() != header.n || mu.size() != header.n) {
    fail(ErrorCode::kInvalidArgument, "x and mu must have length n");
  }
  DualityChain c;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    c.dual_sum += y[k];
    c.y_ax += y[k] * rows[k].lhs(x);
  }
  for (std::size_t i = 0; i < x.size(); ++i) c.mu_x += mu[i] * x[i];
  std::vector<double> mb, xb;
  std::vector<bool> covered(header.n, false);
  for (const NormTerm& t : header.terms) {
    mb.clear();
    xb.clear();
    for (std::size_t i : t.set) {
      mb.push_back(mu[i]);
      xb.push_back(x[i]);
      covered[i] = true;
    }
    c.holder += lq_norm(mb, t.dual()) * lq_norm(xb, t.exponent);
  }
  // Variables outside every term pair up through |mu_i| * |x_i|.
  for (std::size_t i = 0; i < header.n; ++i) {
    if (!covered[i]) c.holder += mu[i] * x[i];
  }
  return c;
}

}  // namespace

std::vector<std::string> check_duality_chain(const DualityChain& c,
                                             double tol) {
  std::vector<std::string> out;
  if (!leq(c.dual_sum, c.y_ax, tol)) {
    out.push_back("sum y = " + fmt(c.dual_sum) + " exceeds y^T A x = " +
                  fmt(c.y_ax));
  }
  if (!leq(c.y_ax, c.mu_x, tol) || !leq(c.mu_x, c.y_ax, tol)) {
    out.push_back("y^T A x = " + fmt(c.y_ax) + " differs from mu^T x = " +
                  fmt(c.mu_x));
  }
  if (!leq(c.mu_x, c.holder, tol)) {
    out.push_back("mu^T x = " + fmt(c.mu_x) + " exceeds the Hoelder sum " +
                  fmt(c.holder));
  }
  return out;
}

DualityChain weak_duality_check(const InstanceHeader& header,
                                std::span<const CoveringConstraint> rows,
                                std::span<const double> x,
                                std::span<const double> y,
                                std::span<const double> mu) {
  DualityChain c = compute_chain(header, rows, x, y, mu);
  const auto bad = check_duality_chain(c);
  if (!bad.empty()) fail(ErrorCode::kCertificateFailure, bad.front());
  return c;
}

double violation_bound(const InstanceHeader& header) {
  const double dr = static_cast<double>(header.d) * header.rho();
  return 1.0 + 6.0 * std::log(std::max(dr, std::numbers::e));
}

namespace {

struct RunView {
  const OnlineSolver& solver;
  const InstanceHeader& original;
  std::span<const CoveringConstraint> original_rows;
  std::vector<double> x_bar;
  double offset = 0.0;
  double factor = 1.0;
  // When x_bar is the solver's own point, its running primal is used so the
  // value matches the offset's arithmetic.
  bool own_point = false;
};

Certificate build(const RunView& run) {
  const OnlineSolver& s = run.solver;
  const SolverState& st = s.state();
  Certificate c;
  c.rows = run.original_rows.size();
  c.f_offset = run.offset;
  c.primal = run.own_point ? st.primal_value
                           : eval_objective(run.original, run.x_bar) - run.offset;
  c.dual = st.dual_value;
  c.per_term = dual_violation(s.header(), st.mu);
  c.violation = c.per_term.max;
  c.bound = violation_bound(run.original);
  c.pd_gap_limit =
      2.0 * (1.0 + s.config().eta) * (1.0 + s.config().eta) * run.factor;

  if (c.dual > 0.0) {
    c.pd_gap = c.primal / c.dual;
    c.certified_ratio = c.primal * c.violation / c.dual;
  } else {
    c.pd_gap = c.primal > 0.0 ? kInfinity : 1.0;
    c.certified_ratio = c.pd_gap;
  }
  c.lower_bound = c.violation > 0.0 ? c.dual / c.violation : 0.0;

  c.chain = compute_chain(s.header(), st.rows, st.x, st.y, st.mu);
  for (std::string& f : check_duality_chain(c.chain)) {
    c.failures.push_back("weak duality: " + f);
  }

  const std::vector<double> mu = s.recompute_mu();
  double y1 = 0.0;
  for (double v : st.y) y1 += v;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    c.mu_drift = std::max(c.mu_drift, std::abs(mu[i] - st.mu[i]));
  }
  if (c.mu_drift > 1e-9 * std::max(y1 * s.header().a_max, 1.0)) {
    c.failures.push_back("mu drifted from A^T y by " + fmt(c.mu_drift));
  }

  c.min_slack = kInfinity;
  for (std::size_t k = 0; k < run.original_rows.size(); ++k) {
    const double slack = run.original_rows[k].lhs(run.x_bar) - 1.0;
    c.min_slack = std::min(c.min_slack, slack);
  }
  if (run.original_rows.empty()) c.min_slack = 0.0;
  if (c.min_slack < -s.config().lhs_tol) {
    c.failures.push_back("a processed row is unsatisfied (slack " +
                         fmt(c.min_slack) + ")");
  }

  if (!(c.pd_gap <= c.pd_gap_limit) && c.dual > 0.0) {
    c.failures.push_back("pd_gap " + fmt(c.pd_gap) + " exceeds " +
                         fmt(c.pd_gap_limit));
  }
  if (c.dual == 0.0 && c.primal > 0.0) {
    c.failures.push_back("positive primal " + fmt(c.primal) +
                         " with zero dual");
  }
  const double slack_bound = c.bound * (1.0 + 10.0 * s.config().eta);
  if (!(c.violation <= slack_bound)) {
    c.failures.push_back("dual violation " + fmt(c.violation) +
                         " exceeds " + fmt(slack_bound));
  }
  return c;
}

[[noreturn]] void raise(const Certificate& c) {
  std::string msg = c.failures.front();
  for (std::size_t i = 1; i < c.failures.size(); ++i) {
    msg += "; " + c.failures[i];
  }
  fail(ErrorCode::kCertificateFailure, msg);
}

}  // namespace

Certificate evaluate_certificate(const OnlineSolver& solver) {
  const SolverState& st = solver.state();
  RunView run{solver, solver.header(), st.rows, st.x, st.f_offset, 1.0, true};
  return build(run);
}

Certificate evaluate_certificate(const ReducedSolver& solver) {
  const OnlineSolver& inner = solver.solver();
  if (solver.map().identity()) {
    const SolverState& st = inner.state();
    RunView run{inner, solver.original_header(), solver.original_rows(), st.x,
                st.f_offset, 1.0, true};
    return build(run);
  }
  // The reported point starts at twice the smallest initial copy.
  std::vector<double> x0(inner.header().n, 0.0);
  for (std::size_t c = 0; c < x0.size(); ++c) {
    if (inner.groups().costed(c)) x0[c] = inner.delta();
  }
  const std::vector<double> start = project_solution(x0, solver.map());
  RunView run{inner,
              solver.original_header(),
              solver.original_rows(),
              solver.solution(),
              eval_objective(solver.original_header(), start),
              solver.projection_factor()};
  return build(run);
}

Certificate certified_ratio(const OnlineSolver& solver) {
  Certificate c = evaluate_certificate(solver);
  if (!c.ok()) raise(c);
  return c;
}

Certificate certified_ratio(const ReducedSolver& solver) {
  Certificate c = evaluate_certificate(solver);
  if (!c.ok()) raise(c);
  return c;
}

}  // namespace lqcover
