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

// Run orchestration shared by the lqcover executable and the tests. Every
// run produces a single JSON report; wall-clock time is included only when
// asked for, so that reports are otherwise byte-for-byte reproducible.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lqcover/cli/io.hpp"
#include "lqcover/cli/report.hpp"
#include "lqcover/oracle.hpp"
#include "lqcover/solver.hpp"

namespace lqcover::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitCertificate = 3;

struct RunOptions {
  SolverConfig solver;
  std::uint64_t seed = 1;
  bool timing = false;
  // Routing: number of z variables to declare; 0 means "count the requests".
  std::size_t max_requests = 0;
};

struct RunResult {
  Json report;
  int exit_code = kExitOk;
};

/// Streams rows from `reader` through the solver (via the disjoint reduction
/// when the header allows overlap).
RunResult run_solve(InstanceReader& reader, const RunOptions& options);
RunResult run_solve(const InstanceHeader& header,
                    std::span<const CoveringConstraint> rows,
                    const RunOptions& options);

RunResult run_bab(const GraphSpec& graph, std::span<const Event> events,
                  const RunOptions& options);

RunResult run_route(const GraphSpec& graph, std::span<const Event> events,
                    const RunOptions& options);

Json run_oracle(const InstanceHeader& header,
                std::span<const CoveringConstraint> rows,
                const OracleOptions& options);

/// Options echoed in a report's "config" section.
RunOptions options_from_report(const Json& report);

}  // namespace lqcover::cli
