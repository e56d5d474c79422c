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

#include <cstddef>
#include <span>

namespace lqcover {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v);
  double value() const { return sum_ + comp_; }
  void reset() { sum_ = comp_ = 0.0; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Incrementally maintained sum_i x_i^q of one norm group, stored relative
/// to a scale s as sum_i (x_i/s)^q so the norm s * sum^(1/q) stays
/// representable for large q and tiny x.
///
/// The caller must call rebuild() whenever needs_rebuild() reports true:
/// after kRebuildPeriod incremental updates, or once a value outgrows the
/// scale by kRescaleFactor.
class PowerSum {
 public:
  static constexpr std::size_t kRebuildPeriod = std::size_t{1} << 14;
  static constexpr double kRescaleFactor = 16.0;

  PowerSum() = default;
  PowerSum(double q, std::span<const double> values);

  void rebuild(std::span<const double> values);
  void update(double old_value, double new_value);

  bool needs_rebuild() const { return stale_ || updates_ >= kRebuildPeriod; }
  double exponent() const { return q_; }
  double scale() const { return scale_; }

  /// ||x||_q
  double norm() const;
  /// sum_i x_i^q in absolute terms (may under/overflow for extreme q).
  double value() const;

 private:
  double q_ = 1.0;
  double scale_ = 1.0;
  CompensatedSum sum_;
  std::size_t updates_ = 0;
  bool stale_ = false;
};

}  // namespace lqcover
