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

#include <string>

#include "json.hpp"
#include "lqcover/certification.hpp"
#include "lqcover/model.hpp"
#include "lqcover/solver.hpp"

namespace lqcover::cli {

using Json = nlohmann::ordered_json;

/// Compact JSON with every floating-point number written as %.17g, so a
/// parse of the output reproduces each double exactly. Non-finite values
/// become the strings "inf", "-inf" and "nan".
std::string dump(const Json& value);

double number_or_inf(const Json& value);

Json to_json(const InstanceHeader& header);
Json to_json(const SolverConfig& config);
Json to_json(const Certificate& cert);
Json to_json(const InstanceStats& stats);

SolverConfig solver_config_from_json(const Json& value);

}  // namespace lqcover::cli
