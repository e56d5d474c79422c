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

#include "lqcover/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lqcover/error.hpp"

namespace lqcover {

OracleMode parse_oracle_mode(std::string_view name) {
  if (name == "grid") return OracleMode::kGrid;
  if (name == "subgrad" || name == "subgradient") return OracleMode::kSubgradient;
  fail(ErrorCode::kInvalidArgument,
       "unknown oracle mode '" + std::string(name) + "'");
}

std::string_view to_string(OracleMode mode) {
  return mode == OracleMode::kGrid ? "grid" : "subgrad";
}

std::vector<double> objective_subgradient(const InstanceHeader& header,
                                          std::span<const double> x) {
  std::vector<double> g(header.n, 0.0);
  std::vector<double> buf;
  for (const NormTerm& t : header.terms) {
    if (!t.costed()) continue;
    if (t.exponent == 1.0) {
      for (std::size_t i : t.set) g[i] += t.weight;
      continue;
    }
    buf.clear();
    for (std::size_t i : t.set) buf.push_back(x[i]);
    const double norm = lq_norm(buf, t.exponent);
    if (norm == 0.0) continue;
    for (std::size_t i : t.set) {
      g[i] += t.weight * std::pow(x[i] / norm, t.exponent - 1.0);
    }
  }
  return g;
}

namespace {

// Rows left after free variables have absorbed every row they touch, and the
// costed variables those rows still involve.
struct Reduced {
  std::vector<double> base;  // values of free variables, zero elsewhere
  std::vector<const CoveringConstraint*> rows;
  std::vector<std::size_t> active;
  double x_max = 0.0;
};

Reduced preprocess(const InstanceHeader& header,
                   std::span<const CoveringConstraint> rows) {
  header.validate();
  std::vector<bool> costed(header.n, false);
  for (const NormTerm& t : header.terms) {
    if (!t.costed()) continue;
    for (std::size_t i : t.set) costed[i] = true;
  }
  Reduced r;
  r.base.assign(header.n, 0.0);
  std::vector<bool> active(header.n, false);
  double a_min = kInfinity;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const CoveringConstraint& row = rows[k];
    if (row.entries.empty()) {
      fail(ErrorCode::kInfeasible, "row " + std::to_string(k) + " is empty");
    }
    for (const Entry& e : row.entries) {
      if (e.index >= header.n || !(e.coeff > 0.0)) {
        fail(ErrorCode::kInvalidArgument,
             "row " + std::to_string(k) + " is malformed");
      }
    }
    const auto free_it =
        std::find_if(row.entries.begin(), row.entries.end(),
                     [&](const Entry& e) { return !costed[e.index]; });
    if (free_it != row.entries.end()) {
      r.base[free_it->index] =
          std::max(r.base[free_it->index], 1.0 / free_it->coeff);
      continue;
    }
    r.rows.push_back(&row);
    for (const Entry& e : row.entries) {
      active[e.index] = true;
      a_min = std::min(a_min, e.coeff);
    }
  }
  for (std::size_t i = 0; i < header.n; ++i) {
    if (active[i]) r.active.push_back(i);
  }
  r.x_max = r.rows.empty() ? 0.0 : 1.0 / a_min;
  return r;
}

class GridSearch {
 public:
  GridSearch(const InstanceHeader& header, const Reduced& red)
      : header_(header), x_(red.base) {
    last_ = red.active.back();
    free_.assign(red.active.begin(), red.active.end() - 1);
    for (const CoveringConstraint* row : red.rows) {
      const bool has = std::any_of(
          row->entries.begin(), row->entries.end(),
          [&](const Entry& e) { return e.index == last_; });
      (has ? with_last_ : without_last_).push_back(row);
    }
  }

  std::size_t dims() const { return free_.size(); }

  // Objective with the grid variables fixed to `p`; +inf when infeasible.
  double evaluate(const std::vector<double>& p) {
    ++evaluations_;
    for (std::size_t j = 0; j < free_.size(); ++j) x_[free_[j]] = p[j];
    x_[last_] = 0.0;
    for (const CoveringConstraint* row : without_last_) {
      if (row->lhs(x_) < 1.0 - 1e-12) return kInfinity;
    }
    double need = 0.0;
    for (const CoveringConstraint* row : with_last_) {
      double rest = 0.0;
      double a = 0.0;
      for (const Entry& e : row->entries) {
        if (e.index == last_) {
          a = e.coeff;
        } else {
          rest += e.coeff * x_[e.index];
        }
      }
      need = std::max(need, (1.0 - rest) / a);
    }
    x_[last_] = need;
    return eval_objective(header_, x_);
  }

  const std::vector<double>& point() const { return x_; }
  std::size_t evaluations() const { return evaluations_; }

 private:
  const InstanceHeader& header_;
  std::vector<double> x_;
  std::size_t last_ = 0;
  std::vector<std::size_t> free_;
  std::vector<const CoveringConstraint*> with_last_;
  std::vector<const CoveringConstraint*> without_last_;
  std::size_t evaluations_ = 0;
};

std::size_t points_per_axis(std::size_t dims, std::size_t budget) {
  if (dims == 0) return 1;
  std::size_t g = 2;
  while (std::pow(static_cast<double>(g + 1), static_cast<double>(dims)) <=
         static_cast<double>(budget)) {
    ++g;
  }
  return g;
}

OracleResult grid_oracle(const InstanceHeader& header, const Reduced& red,
                         const OracleOptions& opt) {
  if (red.active.size() > 6) {
    fail(ErrorCode::kInvalidArgument,
         "grid oracle supports at most 6 constrained variables, got " +
             std::to_string(red.active.size()));
  }
  GridSearch search(header, red);
  const std::size_t m = search.dims();
  const std::size_t g = points_per_axis(m, opt.max_grid_points);

  std::vector<double> lo(m, 0.0), hi(m, red.x_max);
  std::vector<double> best_p(m, red.x_max);
  double best = search.evaluate(best_p);
  std::vector<double> best_x = search.point();

  const double target = opt.resolution * 1e-2;
  std::vector<double> p(m);
  std::vector<std::size_t> idx(m);
  for (int round = 0; round < 200; ++round) {
    double h = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      h = std::max(h, (hi[j] - lo[j]) / static_cast<double>(g - 1));
    }
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      for (std::size_t j = 0; j < m; ++j) {
        p[j] = idx[j] + 1 == g
                   ? hi[j]
                   : lo[j] + (hi[j] - lo[j]) * static_cast<double>(idx[j]) /
                                 static_cast<double>(g - 1);
      }
      const double v = search.evaluate(p);
      if (v < best) {
        best = v;
        best_p = p;
        best_x = search.point();
      }
      std::size_t j = 0;
      while (j < m && ++idx[j] == g) idx[j++] = 0;
      if (j == m) break;
    }
    if (m == 0 || h <= target) break;
    for (std::size_t j = 0; j < m; ++j) {
      const double step = (hi[j] - lo[j]) / static_cast<double>(g - 1);
      lo[j] = std::max(0.0, best_p[j] - 2.0 * step);
      hi[j] = std::min(red.x_max, best_p[j] + 2.0 * step);
    }
  }
  return {best, best_x, search.evaluations()};
}

void restore_feasibility(std::vector<double>& x, const Reduced& red) {
  for (const CoveringConstraint* row : red.rows) {
    double lhs = row->lhs(x);
    if (lhs >= 1.0) continue;
    if (lhs > 0.0) {
      const double s = 1.0 / lhs;
      for (const Entry& e : row->entries) x[e.index] *= s;
    } else {
      const double k = static_cast<double>(row->entries.size());
      for (const Entry& e : row->entries) x[e.index] = 1.0 / (k * e.coeff);
    }
    for (int it = 0; it < 8 && row->lhs(x) < 1.0; ++it) {
      for (const Entry& e : row->entries) x[e.index] *= 1.0 + 1e-15;
    }
  }
}

// Euclidean projection onto {x >= 0, A x >= 1} by Dykstra's alternating
// projections. Each halfspace correction is a multiple of its row, so one
// scalar per row suffices; the orthant keeps a full correction vector.
void project_rows(std::vector<double>& x, const Reduced& red,
                  const std::vector<double>& row_norm2) {
  std::vector<double> t(red.rows.size(), 0.0);
  std::vector<double> q(x.size(), 0.0);
  for (int sweep = 0; sweep < 500; ++sweep) {
    double moved = 0.0;
    for (std::size_t k = 0; k < red.rows.size(); ++k) {
      const CoveringConstraint& row = *red.rows[k];
      for (const Entry& e : row.entries) x[e.index] -= t[k] * e.coeff;
      const double next = std::max(0.0, (1.0 - row.lhs(x)) / row_norm2[k]);
      for (const Entry& e : row.entries) x[e.index] += next * e.coeff;
      moved = std::max(moved, std::abs(next - t[k]) * std::sqrt(row_norm2[k]));
      t[k] = next;
    }
    for (std::size_t i : red.active) {
      const double y = x[i] + q[i];
      const double clipped = std::max(y, 0.0);
      moved = std::max(moved, std::abs(clipped - x[i]));
      x[i] = clipped;
      q[i] = y - clipped;
    }
    if (moved <= 1e-14) break;
  }
}

OracleResult subgradient_oracle(const InstanceHeader& header,
                                const Reduced& red, const OracleOptions& opt) {
  std::vector<double> x = red.base;
  for (const CoveringConstraint* row : red.rows) {
    for (const Entry& e : row->entries) {
      x[e.index] = std::max(x[e.index], 1.0 / e.coeff);
    }
  }
  double best = eval_objective(header, x);
  std::vector<double> best_x = x;
  std::size_t evals = 1;
  if (red.rows.empty()) return {best, best_x, evals};

  std::vector<double> row_norm2;
  for (const CoveringConstraint* row : red.rows) {
    double s = 0.0;
    for (const Entry& e : row->entries) s += e.coeff * e.coeff;
    row_norm2.push_back(s);
  }

  double g0 = 0.0;
  for (double v : objective_subgradient(header, x)) g0 += v * v;
  const double a0 = 0.5 * red.x_max / std::max(std::sqrt(g0), 1e-12);

  std::vector<double> candidate;
  for (std::size_t t = 1; t <= opt.iterations; ++t) {
    const std::vector<double> g = objective_subgradient(header, x);
    const double step = a0 / std::sqrt(static_cast<double>(t));
    for (std::size_t i : red.active) {
      x[i] = std::max(0.0, x[i] - step * g[i]);
    }
    // Two feasible candidates: the raw step rescaled row by row, and the
    // projected iterate.
    candidate = x;
    project_rows(x, red, row_norm2);
    for (int pick = 0; pick < 2; ++pick) {
      if (pick == 1) candidate = x;
      restore_feasibility(candidate, red);
      const double v = eval_objective(header, candidate);
      ++evals;
      if (v < best) {
        best = v;
        best_x = candidate;
      }
    }
  }
  return {best, best_x, evals};
}

}  // namespace

OracleResult offline_oracle(const InstanceHeader& header,
                            std::span<const CoveringConstraint> rows,
                            const OracleOptions& options) {
  if (!(options.resolution > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "oracle resolution must be positive");
  }
  const Reduced red = preprocess(header, rows);
  if (red.rows.empty()) {
    return {eval_objective(header, red.base), red.base, 1};
  }
  return options.mode == OracleMode::kGrid
             ? grid_oracle(header, red, options)
             : subgradient_oracle(header, red, options);
}

}  // namespace lqcover
