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

#include "lqcover/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lqcover/error.hpp"

namespace lqcover {

double dual_exponent(double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) {
    fail(ErrorCode::kInvalidExponent,
         "norm exponent must be a finite real >= 1, got " + std::to_string(q));
  }
  if (q == 1.0) return kInfinity;
  return q / (q - 1.0);
}

double CoveringConstraint::lhs(std::span<const double> x) const {
  double s = 0.0;
  for (const Entry& e : entries) s += e.coeff * x[e.index];
  return s;
}

bool operator==(const NormTerm& a, const NormTerm& b) {
  return a.set == b.set && a.weight == b.weight && a.exponent == b.exponent;
}

bool operator==(const InstanceHeader& a, const InstanceHeader& b) {
  return a.n == b.n && a.terms == b.terms && a.d == b.d &&
         a.a_min == b.a_min && a.a_max == b.a_max && a.disjoint == b.disjoint;
}

std::size_t InstanceHeader::max_group_size() const {
  std::size_t m = 0;
  for (const NormTerm& t : terms) m = std::max(m, t.set.size());
  return m;
}

bool sets_are_disjoint(const InstanceHeader& header) {
  std::vector<bool> seen(header.n, false);
  for (const NormTerm& t : header.terms) {
    for (std::size_t i : t.set) {
      if (i >= header.n) return false;
      if (seen[i]) return false;
      seen[i] = true;
    }
  }
  return true;
}

void InstanceHeader::validate() const {
  auto bad = [](const std::string& msg) {
    fail(ErrorCode::kInvalidArgument, msg);
  };
  if (!(a_min > 0.0) || !(a_min <= a_max) || !std::isfinite(a_max)) {
    bad("need 0 < a_min <= a_max < inf");
  }
  if (d == 0) bad("declared sparsity d must be positive");
  for (std::size_t e = 0; e < terms.size(); ++e) {
    const NormTerm& t = terms[e];
    const std::string where = "term " + std::to_string(e) + ": ";
    if (t.set.empty()) bad(where + "empty index set");
    if (!(t.weight >= 0.0) || !std::isfinite(t.weight)) {
      bad(where + "weight must be finite and >= 0");
    }
    (void)dual_exponent(t.exponent);
    std::vector<std::size_t> sorted = t.set;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      bad(where + "duplicate index in set");
    }
    if (sorted.back() >= n) bad(where + "index out of range");
    if (t.set.size() > d) {
      bad(where + "|S_e| = " + std::to_string(t.set.size()) +
          " exceeds declared d = " + std::to_string(d));
    }
  }
  if (disjoint && !sets_are_disjoint(*this)) {
    bad("header claims disjoint sets but two terms share a variable");
  }
}

GroupIndex::GroupIndex(const InstanceHeader& header)
    : term_of_(header.n, kUncosted), costed_(header.n, false) {
  for (std::size_t e = 0; e < header.terms.size(); ++e) {
    for (std::size_t i : header.terms[e].set) {
      if (i >= header.n) {
        fail(ErrorCode::kInvalidArgument, "term index out of range");
      }
      if (term_of_[i] != kUncosted) {
        fail(ErrorCode::kInvalidArgument,
             "variable " + std::to_string(i) + " lies in two terms");
      }
      term_of_[i] = e;
      costed_[i] = header.terms[e].costed();
    }
  }
}

namespace detail {

bool prefers_log_domain(std::span<const double> v, double q) {
  if (q > 8.0 && std::isfinite(q)) return true;
  double lo = kInfinity;
  double hi = 0.0;
  for (double x : v) {
    if (x > 0.0) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
  return hi > 0.0 && hi > 1e6 * lo;
}

double lq_norm_direct(std::span<const double> v, double q) {
  if (std::isinf(q)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
  }
  double s = 0.0;
  if (q == 1.0) {
    for (double x : v) s += x;
    return s;
  }
  for (double x : v) s += std::pow(x, q);
  return std::pow(s, 1.0 / q);
}

double lq_norm_log(std::span<const double> v, double q) {
  double hi = 0.0;
  for (double x : v) hi = std::max(hi, x);
  if (hi == 0.0) return 0.0;
  if (std::isinf(q)) return hi;
  // log ||v||_q = log hi + (1/q) log sum_i exp(q (log v_i - log hi))
  const double log_hi = std::log(hi);
  double s = 0.0;
  for (double x : v) {
    if (x > 0.0) s += std::exp(q * (std::log(x) - log_hi));
  }
  return std::exp(log_hi + std::log(s) / q);
}

}  // namespace detail

double lq_norm(std::span<const double> v, double q) {
  if (q == 1.0 || std::isinf(q)) return detail::lq_norm_direct(v, q);
  return detail::prefers_log_domain(v, q) ? detail::lq_norm_log(v, q)
                                          : detail::lq_norm_direct(v, q);
}

namespace {

void check_point(const InstanceHeader& header, std::span<const double> x) {
  if (x.size() != header.n) {
    fail(ErrorCode::kInvalidArgument,
         "point has length " + std::to_string(x.size()) + ", expected " +
             std::to_string(header.n));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0) || !std::isfinite(x[i])) {
      fail(ErrorCode::kDomain, "x[" + std::to_string(i) +
                                   "] must be finite and nonnegative");
    }
  }
}

}  // namespace

double eval_term(const NormTerm& term, std::span<const double> x) {
  if (!term.costed()) return 0.0;
  std::vector<double> buf;
  buf.reserve(term.set.size());
  for (std::size_t i : term.set) buf.push_back(x[i]);
  return term.weight * lq_norm(buf, term.exponent);
}

double eval_objective(const InstanceHeader& header, std::span<const double> x) {
  check_point(header, x);
  double f = 0.0;
  for (const NormTerm& t : header.terms) f += eval_term(t, x);
  return f;
}

std::vector<double> eval_gradient(const InstanceHeader& header,
                                  std::span<const double> x) {
  check_point(header, x);
  std::vector<double> g(header.n, 0.0);
  std::vector<double> buf;
  for (std::size_t e = 0; e < header.terms.size(); ++e) {
    const NormTerm& t = header.terms[e];
    if (!t.costed()) continue;
    if (t.exponent == 1.0) {
      for (std::size_t i : t.set) g[i] += t.weight;
      continue;
    }
    buf.clear();
    for (std::size_t i : t.set) {
      if (x[i] == 0.0) {
        fail(ErrorCode::kSingularGradient,
             "x[" + std::to_string(i) + "] = 0 in term " + std::to_string(e) +
                 " with q > 1");
      }
      buf.push_back(x[i]);
    }
    const double norm = lq_norm(buf, t.exponent);
    for (std::size_t i : t.set) {
      g[i] += t.weight * std::pow(x[i] / norm, t.exponent - 1.0);
    }
  }
  return g;
}

void validate_constraint(const InstanceHeader& header,
                         const CoveringConstraint& row) {
  std::vector<std::size_t> idx;
  idx.reserve(row.entries.size());
  for (const Entry& e : row.entries) {
    if (e.index >= header.n) {
      fail(ErrorCode::kInvalidArgument,
           "row references variable " + std::to_string(e.index) +
               " but n = " + std::to_string(header.n));
    }
    if (!(e.coeff > 0.0) || !std::isfinite(e.coeff)) {
      fail(ErrorCode::kInvalidArgument,
           "row coefficients must be finite and strictly positive");
    }
    idx.push_back(e.index);
  }
  std::sort(idx.begin(), idx.end());
  if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) {
    fail(ErrorCode::kInvalidArgument, "row repeats a variable index");
  }
  if (row.entries.size() > header.d) {
    fail(ErrorCode::kHeaderViolation,
         "row sparsity " + std::to_string(row.entries.size()) +
             " exceeds declared d = " + std::to_string(header.d));
  }
  // Relative slack of a few ulps so that values printed and re-parsed at
  // full precision never trip the check.
  constexpr double kSlack = 1e-12;
  for (const Entry& e : row.entries) {
    if (e.coeff < header.a_min * (1.0 - kSlack) ||
        e.coeff > header.a_max * (1.0 + kSlack)) {
      fail(ErrorCode::kHeaderViolation,
           "coefficient " + std::to_string(e.coeff) +
               " outside declared [a_min, a_max]");
    }
  }
}

StatsTracker::StatsTracker(const InstanceHeader& header) {
  bounds_.n = header.n;
  bounds_.d = header.d;
  bounds_.a_min = header.a_min;
  bounds_.a_max = header.a_max;
  stats_.max_group = header.max_group_size();
  stats_.d_observed = stats_.max_group;
}

void StatsTracker::observe(const CoveringConstraint& row) {
  validate_constraint(bounds_, row);
  ++stats_.rows;
  stats_.row_sparsity = std::max(stats_.row_sparsity, row.entries.size());
  stats_.d_observed = std::max(stats_.row_sparsity, stats_.max_group);
  for (const Entry& e : row.entries) {
    stats_.coeff_min = std::min(stats_.coeff_min, e.coeff);
    stats_.coeff_max = std::max(stats_.coeff_max, e.coeff);
  }
  if (stats_.coeff_max > 0.0) {
    stats_.rho_observed = stats_.coeff_max / stats_.coeff_min;
  }
}

InstanceStats instance_stats(const InstanceHeader& header,
                             std::span<const CoveringConstraint> rows) {
  StatsTracker tracker(header);
  for (const CoveringConstraint& r : rows) tracker.observe(r);
  return tracker.stats();
}

}  // namespace lqcover
