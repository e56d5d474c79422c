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

// Seeded instance generators for tests, benchmarks and the gen-demo
// subcommand. The same seed gives the same instance on every platform: draws
// come from std::mt19937_64 mapped to doubles by hand rather than through the
// implementation-defined standard distributions.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "json.hpp"
#include "lqcover/cli/io.hpp"
#include "lqcover/model.hpp"

namespace lqcover::cli {

struct Instance {
  InstanceHeader header;
  std::vector<CoveringConstraint> rows;
};

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Integer in [lo, hi].
  std::size_t pick(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(gen_() % (hi - lo + 1));
  }
  bool chance(double p) { return uniform() < p; }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[pick(0, i - 1)]);
  }

 private:
  std::mt19937_64 gen_;
};

struct CorpusParams {
  std::size_t max_n = 50;
  std::size_t max_rows = 100;
  std::size_t max_d = 10;
  double max_rho = 16.0;
  std::vector<double> exponents = {1.0, 1.5, 2.0, 3.0, 10.0};
  // Fraction of variables left out of every term.
  double uncosted_fraction = 0.05;
};

/// Random instance with pairwise-disjoint terms.
Instance random_instance(std::uint64_t seed, const CorpusParams& params = {});

/// Random instance in which each variable lies in 1..max_overlap terms.
Instance overlapping_instance(std::uint64_t seed, std::size_t max_n = 20,
                              std::size_t max_overlap = 5,
                              std::size_t max_rows = 30);

/// m blocks of m variables under one global l2 term; row k covers block k.
Instance lower_bound_demo(std::size_t m);

/// Checks a finished run of lower_bound_demo(m) must pass.
nlohmann::ordered_json lower_bound_assertions(std::size_t m);

/// min x0 s.t. x0 >= 1 with a single q = 1 term.
Instance closed_form_instance();

/// Two nodes, one edge 0 -> 1 with the given costs.
GraphSpec two_node_graph(double fixed, double incremental);

/// Four nodes, six edges, three capacity groups whose capacities satisfy
/// c_j >= 8 ln(6) |S_j|^(1/p_j).
GraphSpec routing_fixture();

/// `count` requests cycling over fixed source/sink pairs of routing_fixture().
std::vector<Event> routing_fixture_requests(std::size_t count);

/// Random connected digraph on `nodes` nodes with random costs.
GraphSpec random_bab_graph(std::uint64_t seed, std::size_t nodes);

}  // namespace lqcover::cli
