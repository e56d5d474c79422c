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

#include "lqcover/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lqcover/error.hpp"

namespace lqcover {

std::size_t DuplicationMap::max_copies() const {
  std::size_t r = 0;
  for (const auto& c : copies_of_) r = std::max(r, c.size());
  return r;
}

std::pair<InstanceHeader, DuplicationMap> duplicate(
    const InstanceHeader& header) {
  header.validate();
  DuplicationMap map;
  map.copies_of_.resize(header.n);

  if (sets_are_disjoint(header)) {
    GroupIndex groups(header);
    for (std::size_t i = 0; i < header.n; ++i) {
      map.copies_of_[i] = {i};
      map.copies_.push_back({i, groups.term_of(i)});
    }
    map.identity_ = true;
    InstanceHeader same = header;
    same.disjoint = true;
    return {std::move(same), std::move(map)};
  }

  std::vector<std::vector<std::size_t>> terms_of(header.n);
  for (std::size_t e = 0; e < header.terms.size(); ++e) {
    for (std::size_t i : header.terms[e].set) terms_of[i].push_back(e);
  }
  for (std::size_t i = 0; i < header.n; ++i) {
    if (terms_of[i].empty()) {
      map.copies_of_[i].push_back(map.copies_.size());
      map.copies_.push_back({i, GroupIndex::kUncosted});
      continue;
    }
    for (std::size_t e : terms_of[i]) {
      map.copies_of_[i].push_back(map.copies_.size());
      map.copies_.push_back({i, e});
    }
  }

  InstanceHeader out;
  out.n = map.copies_.size();
  out.d = header.d;
  out.a_min = header.a_min;
  out.a_max = header.a_max;
  out.disjoint = true;
  out.terms.reserve(header.terms.size());
  for (std::size_t e = 0; e < header.terms.size(); ++e) {
    NormTerm t;
    t.weight = header.terms[e].weight;
    t.exponent = header.terms[e].exponent;
    for (std::size_t i : header.terms[e].set) {
      const auto& cs = map.copies_of_[i];
      const auto it = std::find(terms_of[i].begin(), terms_of[i].end(), e);
      t.set.push_back(cs[static_cast<std::size_t>(it - terms_of[i].begin())]);
    }
    out.terms.push_back(std::move(t));
  }
  return {std::move(out), std::move(map)};
}

std::vector<double> project_solution(std::span<const double> copies,
                                     const DuplicationMap& map) {
  if (copies.size() != map.copy_count()) {
    fail(ErrorCode::kInvalidArgument, "copy vector has the wrong length");
  }
  std::vector<double> out(map.original_size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    double m = kInfinity;
    for (std::size_t c : map.copies_of(i)) m = std::min(m, copies[c]);
    out[i] = 2.0 * m;
  }
  return out;
}

ReducedSolver::ReducedSolver(const InstanceHeader& header, SolverConfig config)
    : original_(header),
      map_(),
      solver_([&] {
        auto dup = duplicate(header);
        map_ = std::move(dup.second);
        return OnlineSolver(std::move(dup.first), config);
      }()) {
  const double r = static_cast<double>(std::max<std::size_t>(map_.max_copies(), 1));
  const double n = static_cast<double>(std::max<std::size_t>(header.n, 1));
  iteration_bound_ = static_cast<std::size_t>(std::ceil(2.0 * r * n * 1.1));
}

std::vector<double> ReducedSolver::min_copies() const {
  const std::vector<double>& x = solver_.state().x;
  std::vector<double> out(map_.original_size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    double m = kInfinity;
    for (std::size_t c : map_.copies_of(i)) m = std::min(m, x[c]);
    out[i] = m;
  }
  return out;
}

std::vector<double> ReducedSolver::solution() const {
  if (map_.identity()) return solver_.state().x;
  return project_solution(solver_.state().x, map_);
}

ReductionTrace ReducedSolver::process_general_constraint(
    const CoveringConstraint& row) {
  validate_constraint(original_, row);
  ReductionTrace trace;

  if (map_.identity()) {
    trace.steps.push_back(solver_.process_constraint(row));
    trace.inner_iterations = 1;
    rows_.push_back(row);
    return trace;
  }

  const std::vector<double>& x = solver_.state().x;
  CoveringConstraint inner;
  inner.entries.resize(row.entries.size());
  while (true) {
    double guard = 0.0;
    for (std::size_t j = 0; j < row.entries.size(); ++j) {
      const Entry& en = row.entries[j];
      // argmin over copies, ties to the lowest term id (copies are ordered)
      std::size_t best = map_.copies_of(en.index).front();
      for (std::size_t c : map_.copies_of(en.index)) {
        if (x[c] < x[best]) best = c;
      }
      inner.entries[j] = {best, en.coeff};
      guard += en.coeff * x[best];
    }
    if (!(guard < 0.5)) break;
    if (trace.inner_iterations >= iteration_bound_) {
      fail(ErrorCode::kIterationBound,
           "separation loop exceeded " + std::to_string(iteration_bound_) +
               " iterations");
    }
    trace.steps.push_back(solver_.process_constraint(inner));
    ++trace.inner_iterations;
  }
  rows_.push_back(row);
  return trace;
}

}  // namespace lqcover
