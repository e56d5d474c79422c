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

#include "lqcover/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lqcover {

void SolverConfig::validate() const {
  if (delta && !(*delta > 0.0 && std::isfinite(*delta))) {
    fail(ErrorCode::kInvalidArgument, "delta must be positive");
  }
  if (!(eta > 0.0 && eta < 1.0)) {
    fail(ErrorCode::kInvalidArgument, "eta must lie in (0, 1)");
  }
  if (!(lhs_tol > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "lhs_tol must be positive");
  }
  if (max_steps_per_constraint == 0) {
    fail(ErrorCode::kInvalidArgument, "max_steps_per_constraint must be > 0");
  }
}

double default_delta(const InstanceHeader& header) {
  const double d = static_cast<double>(header.d);
  const double n = static_cast<double>(std::max<std::size_t>(header.n, 1));
  return 1e-6 / (d * d * header.a_max * n);
}

OnlineSolver::OnlineSolver(InstanceHeader header, SolverConfig config)
    : header_(std::move(header)),
      config_(config),
      groups_((header_.validate(), header_)),
      tracker_(header_) {
  if (!config_.delta) config_.delta = default_delta(header_);
  config_.validate();

  const double delta = *config_.delta;
  state_.x.assign(header_.n, 0.0);
  for (std::size_t i = 0; i < header_.n; ++i) {
    if (groups_.costed(i)) state_.x[i] = delta;
  }
  state_.mu.assign(header_.n, 0.0);
  std::vector<double> buf;
  state_.power_sums.reserve(header_.terms.size());
  for (const NormTerm& t : header_.terms) {
    buf.clear();
    for (std::size_t i : t.set) buf.push_back(state_.x[i]);
    state_.power_sums.emplace_back(t.exponent, buf);
  }
  // Same arithmetic as objective(), so primal_value is exactly 0 until x moves.
  state_.f_offset = objective();
  state_.primal_value = 0.0;
}

double OnlineSolver::objective() const {
  double f = 0.0;
  for (std::size_t e = 0; e < header_.terms.size(); ++e) {
    const NormTerm& t = header_.terms[e];
    if (t.costed()) f += t.weight * state_.power_sums[e].norm();
  }
  return f;
}

std::vector<double> OnlineSolver::recompute_mu() const {
  std::vector<double> mu(header_.n, 0.0);
  for (std::size_t k = 0; k < state_.rows.size(); ++k) {
    for (const Entry& e : state_.rows[k].entries) {
      mu[e.index] += e.coeff * state_.y[k];
    }
  }
  return mu;
}

void OnlineSolver::compute_rates(const CoveringConstraint& row,
                                 std::vector<double>& rates) const {
  const double inv_d = 1.0 / static_cast<double>(header_.d);
  rates.resize(row.entries.size());
  for (std::size_t j = 0; j < row.entries.size(); ++j) {
    const Entry& en = row.entries[j];
    const std::size_t e = groups_.term_of(en.index);
    const NormTerm& t = header_.terms[e];
    const double xi = state_.x[en.index];
    double grad = t.weight;
    if (t.exponent != 1.0) {
      const double norm = state_.power_sums[e].norm();
      if (!(xi > 0.0) || !(norm > 0.0)) {
        fail(ErrorCode::kSingularGradient,
             "x[" + std::to_string(en.index) +
                 "] reached zero inside a q > 1 term");
      }
      grad *= std::pow(xi / norm, t.exponent - 1.0);
    }
    rates[j] = (en.coeff * xi + inv_d) / grad;
  }
}

double OnlineSolver::trial_lhs(const CoveringConstraint& row,
                               const std::vector<double>& rates,
                               double dtau) const {
  // Same operation order as apply_step followed by row.lhs().
  double s = 0.0;
  for (std::size_t j = 0; j < row.entries.size(); ++j) {
    const Entry& en = row.entries[j];
    s += en.coeff * (state_.x[en.index] + dtau * rates[j]);
  }
  return s;
}

OnlineSolver::StepPlan OnlineSolver::plan_step(
    const CoveringConstraint& row, const std::vector<double>& rates,
    double lhs) const {
  const double eta = config_.eta;
  double cap = kInfinity;
  double slope = 0.0;
  for (std::size_t j = 0; j < row.entries.size(); ++j) {
    const Entry& en = row.entries[j];
    // (a) multiplicative growth of each variable
    cap = std::min(cap, eta * state_.x[en.index] / rates[j]);
    slope += en.coeff * rates[j];
  }
  // (b) predicted change of the left-hand side
  cap = std::min(cap, eta / slope);

  // (c) do not overshoot a_k . x = 1
  if (lhs + cap * slope < 1.0) return {cap, false};
  const double upper = 1.0 + 10.0 * config_.lhs_tol;
  double lo = 0.0;
  double hi = cap;
  if (trial_lhs(row, rates, hi) < 1.0) return {cap, false};
  double guess = std::min((1.0 - lhs) / slope, cap);
  double v = trial_lhs(row, rates, guess);
  if (v >= 1.0 && v <= upper) return {guess, true};
  (v < 1.0 ? lo : hi) = guess;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    v = trial_lhs(row, rates, mid);
    if (v >= 1.0) {
      hi = mid;
      if (v <= upper) break;
    } else {
      lo = mid;
    }
  }
  return {hi, true};
}

double OnlineSolver::choose_step(const CoveringConstraint& row) const {
  std::vector<double> rates;
  compute_rates(row, rates);
  return plan_step(row, rates, row.lhs(state_.x)).dtau;
}

void OnlineSolver::set_value(std::size_t i, double value) {
  const double old = state_.x[i];
  if (!(value > old)) return;
  state_.x[i] = value;
  const std::size_t e = groups_.term_of(i);
  if (e == GroupIndex::kUncosted) return;
  state_.power_sums[e].update(old, value);
  if (state_.power_sums[e].needs_rebuild()) touched_terms_.push_back(e);
}

void OnlineSolver::refresh_stale_terms() {
  if (touched_terms_.empty()) return;
  std::sort(touched_terms_.begin(), touched_terms_.end());
  touched_terms_.erase(std::unique(touched_terms_.begin(), touched_terms_.end()),
                       touched_terms_.end());
  std::vector<double> buf;
  for (std::size_t e : touched_terms_) {
    buf.clear();
    for (std::size_t i : header_.terms[e].set) buf.push_back(state_.x[i]);
    state_.power_sums[e].rebuild(buf);
  }
  touched_terms_.clear();
}

void OnlineSolver::apply_step(const CoveringConstraint& row,
                              const std::vector<double>& rates, double dtau) {
  for (std::size_t j = 0; j < row.entries.size(); ++j) {
    const Entry& en = row.entries[j];
    set_value(en.index, state_.x[en.index] + dtau * rates[j]);
  }
  refresh_stale_terms();
}

void OnlineSolver::integrate_step(const CoveringConstraint& row, double dtau) {
  if (!(dtau > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "integrate_step needs dtau > 0");
  }
  std::vector<double> rates;
  compute_rates(row, rates);
  apply_step(row, rates, dtau);
}

bool OnlineSolver::fast_path_applies(const CoveringConstraint& row) const {
  if (!config_.exact_linear_fast_path) return false;
  for (const Entry& en : row.entries) {
    const std::size_t e = groups_.term_of(en.index);
    if (header_.terms[e].exponent != 1.0) return false;
  }
  return true;
}

// With every variable in a q = 1 term the rate (a x + 1/d) / c is linear in
// x alone, so x(tau) = x0 + (x0 + 1/(d a)) * expm1(a tau / c). The row's
// left-hand side is convex and increasing in tau; Newton iterates started to
// the right of the root stay there.
double OnlineSolver::integrate_exact_linear(const CoveringConstraint& row) {
  const double inv_d = 1.0 / static_cast<double>(header_.d);
  const std::size_t k = row.entries.size();
  std::vector<double> x0(k), shift(k), speed(k);
  for (std::size_t j = 0; j < k; ++j) {
    const Entry& en = row.entries[j];
    const NormTerm& t = header_.terms[groups_.term_of(en.index)];
    x0[j] = state_.x[en.index];
    shift[j] = x0[j] + inv_d / en.coeff;
    speed[j] = en.coeff / t.weight;
  }
  auto value_at = [&](std::size_t j, double tau) {
    return std::max(x0[j], x0[j] + shift[j] * std::expm1(speed[j] * tau));
  };
  auto lhs_at = [&](double tau) {
    double s = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      s += row.entries[j].coeff * value_at(j, tau);
    }
    return s;
  };
  auto slope_at = [&](double tau) {
    double s = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      s += row.entries[j].coeff * shift[j] * speed[j] *
           std::exp(speed[j] * tau);
    }
    return s;
  };

  const double lhs0 = lhs_at(0.0);
  // The tangent at 0 undershoots a convex function, so its root brackets.
  double tau = (1.0 - lhs0) / slope_at(0.0);
  double v = lhs_at(tau);
  double lo = 0.0;
  while (!std::isfinite(v)) {
    tau = 0.5 * (lo + tau);
    v = lhs_at(tau);
  }
  for (int it = 0; it < 100 && v - 1.0 > 0.5 * config_.lhs_tol; ++it) {
    const double next = tau - (v - 1.0) / slope_at(tau);
    if (!(next < tau) || next <= lo) break;
    const double nv = lhs_at(next);
    if (nv < 1.0) {
      lo = next;
      break;
    }
    tau = next;
    v = nv;
  }
  for (int it = 0; it < 200 && v < 1.0; ++it) {
    tau = std::nextafter(tau, kInfinity) * (1.0 + 1e-15);
    v = lhs_at(tau);
  }
  for (std::size_t j = 0; j < k; ++j) {
    set_value(row.entries[j].index, value_at(j, tau));
  }
  refresh_stale_terms();
  return tau;
}

StepTrace OnlineSolver::process_constraint(const CoveringConstraint& row) {
  tracker_.observe(row);

  StepTrace trace;
  trace.row = state_.rows.size();
  double lhs = row.lhs(state_.x);
  double tau = 0.0;

  const auto uncosted = std::find_if(
      row.entries.begin(), row.entries.end(),
      [&](const Entry& en) { return !groups_.costed(en.index); });

  if (lhs >= 1.0) {
    trace.already_satisfied = true;
  } else if (uncosted != row.entries.end()) {
    // Free variable: fill the remaining gap at zero cost.
    const std::size_t i = uncosted->index;
    double value = state_.x[i] + (1.0 - lhs) / uncosted->coeff;
    set_value(i, value);
    for (int it = 0; it < 64 && row.lhs(state_.x) < 1.0; ++it) {
      value = std::nextafter(value, kInfinity);
      set_value(i, value);
    }
    trace.saturated_uncosted = true;
    ++state_.saturation_events;
  } else if (fast_path_applies(row)) {
    tau = integrate_exact_linear(row);
    trace.fast_path = true;
    trace.steps = 1;
  } else {
    while (lhs < 1.0) {
      if (trace.steps >= config_.max_steps_per_constraint) {
        trace.tau = tau;
        trace.lhs = lhs;
        throw IntegrationFailure(
            "row " + std::to_string(trace.row) + " unsatisfied after " +
                std::to_string(trace.steps) + " steps (lhs = " +
                std::to_string(lhs) + ")",
            trace);
      }
      compute_rates(row, rates_);
      const StepPlan plan = plan_step(row, rates_, lhs);
      apply_step(row, rates_, plan.dtau);
      tau += plan.dtau;
      ++trace.steps;
      lhs = row.lhs(state_.x);
    }
  }

  lhs = row.lhs(state_.x);
  trace.tau = tau;
  trace.lhs = lhs;
  trace.overshoot = lhs - 1.0 > config_.lhs_tol;
  if (trace.overshoot && !trace.already_satisfied) ++state_.overshoot_events;

  state_.rows.push_back(row);
  state_.y.push_back(tau);
  for (const Entry& en : row.entries) state_.mu[en.index] += en.coeff * tau;
  state_.dual_value += tau;
  state_.primal_value = objective() - state_.f_offset;
  state_.step_log.push_back(trace);
  return trace;
}

}  // namespace lqcover
