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

#include "lqcover/power_sum.hpp"

#include <algorithm>
#include <cmath>

namespace lqcover {

void CompensatedSum::add(double v) {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v)) {
    comp_ += (sum_ - t) + v;
  } else {
    comp_ += (v - t) + sum_;
  }
  sum_ = t;
}

PowerSum::PowerSum(double q, std::span<const double> values) : q_(q) {
  rebuild(values);
}

void PowerSum::rebuild(std::span<const double> values) {
  double hi = 0.0;
  for (double v : values) hi = std::max(hi, v);
  scale_ = hi > 0.0 ? hi : 1.0;
  sum_.reset();
  for (double v : values) {
    if (v > 0.0) sum_.add(std::pow(v / scale_, q_));
  }
  updates_ = 0;
  stale_ = false;
}

void PowerSum::update(double old_value, double new_value) {
  sum_.add(std::pow(new_value / scale_, q_));
  sum_.add(-std::pow(old_value / scale_, q_));
  ++updates_;
  if (new_value > kRescaleFactor * scale_) stale_ = true;
}

double PowerSum::norm() const {
  const double s = std::max(sum_.value(), 0.0);
  if (q_ == 1.0) return scale_ * s;
  return scale_ * std::pow(s, 1.0 / q_);
}

double PowerSum::value() const {
  return std::pow(scale_, q_) * std::max(sum_.value(), 0.0);
}

}  // namespace lqcover
