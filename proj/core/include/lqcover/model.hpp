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

#pragma once

// Problem description for online covering with a sum-of-lq-norms objective:
//
//   minimize   sum_e c_e * ||x(S_e)||_{q_e}
//   subject to A x >= 1, x >= 0,
//
// where rows of A arrive one at a time. Everything here is immutable once
// built and safe to share across threads.

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace lqcover {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Hoelder conjugate of `q`: the p with 1/p + 1/q = 1. q == 1 maps to
/// kInfinity. Throws kInvalidExponent for q < 1 or non-finite q.
double dual_exponent(double q);

/// One summand c * ||x(set)||_q of the objective.
struct NormTerm {
  std::vector<std::size_t> set;
  double weight = 1.0;
  double exponent = 1.0;

  double dual() const { return dual_exponent(exponent); }
  bool costed() const { return weight > 0.0; }
};

struct Entry {
  std::size_t index = 0;
  double coeff = 0.0;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Sparse covering row: sum_i coeff_i * x_i >= 1. Zero coefficients are
/// never stored.
struct CoveringConstraint {
  std::vector<Entry> entries;

  double lhs(std::span<const double> x) const;
  friend bool operator==(const CoveringConstraint&,
                         const CoveringConstraint&) = default;
};

struct InstanceHeader {
  std::size_t n = 0;
  std::vector<NormTerm> terms;
  // Declared sparsity bound: max(row sparsity, max_e |S_e|).
  std::size_t d = 1;
  double a_min = 1.0;
  double a_max = 1.0;
  // Asserts the term sets are pairwise disjoint.
  bool disjoint = true;

  double rho() const { return a_max / a_min; }
  std::size_t max_group_size() const;

  /// Throws kInvalidArgument when an invariant does not hold, including a
  /// `disjoint` flag that the sets contradict.
  void validate() const;

  friend bool operator==(const InstanceHeader&, const InstanceHeader&);
};

bool operator==(const NormTerm& a, const NormTerm& b);

bool sets_are_disjoint(const InstanceHeader& header);

/// Maps each variable to the unique term containing it. Requires pairwise
/// disjoint sets.
class GroupIndex {
 public:
  static constexpr std::size_t kUncosted = std::numeric_limits<std::size_t>::max();

  explicit GroupIndex(const InstanceHeader& header);

  /// Term containing `i`, or kUncosted.
  std::size_t term_of(std::size_t i) const { return term_of_[i]; }
  /// True when `i` lies in a term with positive weight. Variables of
  /// zero-weight terms are free, exactly like variables in no term.
  bool costed(std::size_t i) const { return costed_[i]; }
  std::size_t size() const { return term_of_.size(); }

 private:
  std::vector<std::size_t> term_of_;
  std::vector<bool> costed_;
};

/// ||v||_q for nonnegative v and q in [1, inf]. Switches to the log-domain
/// evaluation when q > 8 or the positive entries span more than six orders of
/// magnitude.
double lq_norm(std::span<const double> v, double q);

namespace detail {
double lq_norm_direct(std::span<const double> v, double q);
double lq_norm_log(std::span<const double> v, double q);
bool prefers_log_domain(std::span<const double> v, double q);
}  // namespace detail

/// f(x) = sum_e c_e ||x(S_e)||_{q_e}. Throws kDomain on a negative or
/// non-finite entry, kInvalidArgument on a length mismatch.
double eval_objective(const InstanceHeader& header, std::span<const double> x);

/// Value of a single term.
double eval_term(const NormTerm& term, std::span<const double> x);

/// Gradient of f. Entries outside every costed term are 0. A costed entry at
/// zero inside a term with q > 1 throws kSingularGradient.
std::vector<double> eval_gradient(const InstanceHeader& header,
                                  std::span<const double> x);

/// Checks a row against the header's declared bounds; throws
/// kInvalidArgument for malformed rows and kHeaderViolation when a declared
/// bound (d, a_min, a_max) is exceeded.
void validate_constraint(const InstanceHeader& header,
                         const CoveringConstraint& row);

struct InstanceStats {
  std::size_t d_observed = 0;   // max(row sparsity, max_e |S_e|)
  std::size_t row_sparsity = 0;
  std::size_t max_group = 0;
  double coeff_min = kInfinity;
  double coeff_max = 0.0;
  double rho_observed = 1.0;
  std::size_t rows = 0;
};

/// Accumulates d and rho over a stream of rows, rejecting any row that would
/// push them past the declared header bounds.
class StatsTracker {
 public:
  explicit StatsTracker(const InstanceHeader& header);

  void observe(const CoveringConstraint& row);
  const InstanceStats& stats() const { return stats_; }

 private:
  InstanceHeader bounds_;  // n, d, a_min, a_max only
  InstanceStats stats_;
};

InstanceStats instance_stats(const InstanceHeader& header,
                             std::span<const CoveringConstraint> rows);

}  // namespace lqcover
