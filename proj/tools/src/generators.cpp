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

#include "lqcover/cli/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lqcover::cli {

namespace {

std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

CoveringConstraint random_row(Draw& draw, std::size_t n, std::size_t width,
                              double rho) {
  std::vector<std::size_t> idx = iota(n);
  draw.shuffle(idx);
  idx.resize(width);
  std::sort(idx.begin(), idx.end());
  CoveringConstraint row;
  for (std::size_t i : idx) {
    row.entries.push_back({i, rho == 1.0 ? 1.0 : draw.uniform(1.0, rho)});
  }
  return row;
}

}  // namespace

Instance random_instance(std::uint64_t seed, const CorpusParams& p) {
  Draw draw(seed);
  Instance inst;
  InstanceHeader& h = inst.header;
  h.n = draw.pick(2, p.max_n);
  h.d = draw.pick(2, p.max_d);
  const double rho = draw.chance(0.3) ? 1.0 : draw.uniform(1.0, p.max_rho);
  h.a_min = 1.0;
  h.a_max = rho;
  h.disjoint = true;

  std::vector<std::size_t> vars = iota(h.n);
  draw.shuffle(vars);
  std::size_t pos = 0;
  while (pos < vars.size()) {
    const std::size_t size = std::min(draw.pick(1, h.d), vars.size() - pos);
    if (draw.chance(p.uncosted_fraction)) {
      pos += size;
      continue;
    }
    NormTerm t;
    t.set.assign(vars.begin() + static_cast<std::ptrdiff_t>(pos),
                 vars.begin() + static_cast<std::ptrdiff_t>(pos + size));
    std::sort(t.set.begin(), t.set.end());
    t.weight = draw.chance(0.03) ? 0.0 : draw.uniform(0.5, 4.0);
    t.exponent = p.exponents[draw.pick(0, p.exponents.size() - 1)];
    h.terms.push_back(std::move(t));
    pos += size;
  }

  const std::size_t rows = draw.pick(1, p.max_rows);
  for (std::size_t k = 0; k < rows; ++k) {
    const std::size_t width = draw.pick(1, std::min(h.d, h.n));
    inst.rows.push_back(random_row(draw, h.n, width, rho));
  }
  return inst;
}

Instance overlapping_instance(std::uint64_t seed, std::size_t max_n,
                              std::size_t max_overlap, std::size_t max_rows) {
  Draw draw(seed);
  Instance inst;
  InstanceHeader& h = inst.header;
  h.n = draw.pick(2, max_n);
  const std::size_t r = draw.pick(2, max_overlap);
  const std::size_t term_count = draw.pick(r, r + 3);
  const std::vector<double> exps = {1.0, 1.5, 2.0, 3.0};

  std::vector<std::vector<std::size_t>> sets(term_count);
  for (std::size_t i = 0; i < h.n; ++i) {
    std::vector<std::size_t> ts = iota(term_count);
    draw.shuffle(ts);
    // Variable 0 always sits in r terms so the instance really overlaps.
    ts.resize(i == 0 ? r : draw.pick(1, r));
    for (std::size_t e : ts) sets[e].push_back(i);
  }
  std::size_t widest = 0;
  for (auto& s : sets) {
    if (s.empty()) continue;
    NormTerm t;
    t.set = s;
    t.weight = draw.uniform(0.5, 3.0);
    t.exponent = exps[draw.pick(0, exps.size() - 1)];
    widest = std::max(widest, s.size());
    h.terms.push_back(std::move(t));
  }
  const double rho = draw.chance(0.5) ? 1.0 : draw.uniform(1.0, 4.0);
  const std::size_t row_width = std::min<std::size_t>(5, h.n);
  h.a_min = 1.0;
  h.a_max = rho;
  h.d = std::max(widest, row_width);
  h.disjoint = false;

  const std::size_t rows = draw.pick(1, max_rows);
  for (std::size_t k = 0; k < rows; ++k) {
    inst.rows.push_back(random_row(draw, h.n, draw.pick(1, row_width), rho));
  }
  return inst;
}

Instance lower_bound_demo(std::size_t m) {
  Instance inst;
  InstanceHeader& h = inst.header;
  h.n = m * m;
  h.d = m * m;
  NormTerm t;
  t.set = iota(h.n);
  t.weight = 1.0;
  t.exponent = 2.0;
  h.terms.push_back(std::move(t));
  for (std::size_t k = 0; k < m; ++k) {
    CoveringConstraint row;
    for (std::size_t j = 0; j < m; ++j) row.entries.push_back({k * m + j, 1.0});
    inst.rows.push_back(std::move(row));
  }
  return inst;
}

nlohmann::ordered_json lower_bound_assertions(std::size_t m) {
  const double md = static_cast<double>(m);
  const double d = md * md;
  return {{"m", m},
          {"x_bar", 1.0 / md},
          {"x_tol", 1e-4},
          {"gradient", 1.0 / md},
          {"gradient_tol", 1e-4},
          {"min_pointwise_ratio", std::sqrt(md) / 4.0},
          {"max_violation", 1.0 + 6.0 * std::log(std::max(d, std::numbers::e))}};
}

Instance closed_form_instance() {
  Instance inst;
  inst.header.n = 1;
  inst.header.d = 1;
  inst.header.terms.push_back({{0}, 1.0, 1.0});
  inst.rows.push_back({{{0, 1.0}}});
  return inst;
}

GraphSpec two_node_graph(double fixed, double incremental) {
  GraphSpec g;
  g.nodes = 2;
  g.edges.push_back({0, 1, fixed, incremental});
  return g;
}

GraphSpec routing_fixture() {
  GraphSpec g;
  g.nodes = 4;
  g.edges = {{0, 1}, {1, 3}, {0, 2}, {2, 3}, {0, 3}, {1, 2}};
  g.groups = {{{0, 1}, 2.0, 21.0},
              {{2, 3, 5}, kInfinity, 15.0},
              {{4, 5}, 3.0, 19.0}};
  return g;
}

std::vector<Event> routing_fixture_requests(std::size_t count) {
  static constexpr std::size_t kPairs[][2] = {{0, 3}, {0, 3}, {1, 3},
                                              {0, 2}, {1, 2}, {2, 3}};
  std::vector<Event> out;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& p = kPairs[i % std::size(kPairs)];
    out.push_back({EventKind::kRequest, p[0], p[1]});
  }
  return out;
}

GraphSpec random_bab_graph(std::uint64_t seed, std::size_t nodes) {
  Draw draw(seed);
  GraphSpec g;
  g.nodes = nodes;
  for (std::size_t v = 0; v < nodes; ++v) {
    g.edges.push_back({v, (v + 1) % nodes, draw.uniform(0.5, 3.0),
                       draw.uniform(0.0, 1.0)});
  }
  const std::size_t extra = draw.pick(0, nodes);
  for (std::size_t k = 0; k < extra; ++k) {
    const std::size_t u = draw.pick(0, nodes - 1);
    std::size_t v = draw.pick(0, nodes - 2);
    if (v >= u) ++v;
    g.edges.push_back({u, v, draw.uniform(0.5, 3.0), draw.uniform(0.0, 1.0)});
  }
  return g;
}

}  // namespace lqcover::cli
