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

#include "lqcover/cli/report.hpp"

#include <cmath>
#include <cstdio>

#include "lqcover/error.hpp"

namespace lqcover::cli {

namespace {

void write_number(std::string& out, double v) {
  if (std::isnan(v)) {
    out += "\"nan\"";
  } else if (std::isinf(v)) {
    out += v > 0 ? "\"inf\"" : "\"-inf\"";
  } else {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
  }
}

void write(std::string& out, const Json& v) {
  switch (v.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ',';
        first = false;
        out += Json(key).dump();
        out += ':';
        write(out, item);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        write(out, v[i]);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float:
      write_number(out, v.get<double>());
      break;
    default:
      out += v.dump();
  }
}

}  // namespace

std::string dump(const Json& value) {
  std::string out;
  write(out, value);
  return out;
}

double number_or_inf(const Json& value) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const std::string s = value.get<std::string>();
    if (s == "inf" || s == "Infinity") return kInfinity;
    if (s == "-inf") return -kInfinity;
  }
  fail(ErrorCode::kParse, "expected a number or \"inf\"");
}

Json to_json(const InstanceHeader& header) {
  Json terms = Json::array();
  for (const NormTerm& t : header.terms) {
    terms.push_back({{"set", t.set}, {"c", t.weight}, {"q", t.exponent}});
  }
  return {{"n", header.n},         {"d", header.d},
          {"a_min", header.a_min}, {"a_max", header.a_max},
          {"terms", terms},        {"disjoint", header.disjoint}};
}

Json to_json(const SolverConfig& config) {
  Json j;
  j["delta"] = config.delta ? Json(*config.delta) : Json(nullptr);
  j["eta"] = config.eta;
  j["lhs_tol"] = config.lhs_tol;
  j["max_steps_per_constraint"] = config.max_steps_per_constraint;
  j["exact_linear_fast_path"] = config.exact_linear_fast_path;
  return j;
}

SolverConfig solver_config_from_json(const Json& value) {
  SolverConfig c;
  if (value.contains("delta") && !value["delta"].is_null()) {
    c.delta = value["delta"].get<double>();
  }
  if (value.contains("eta")) c.eta = value["eta"].get<double>();
  if (value.contains("lhs_tol")) c.lhs_tol = value["lhs_tol"].get<double>();
  if (value.contains("max_steps_per_constraint")) {
    c.max_steps_per_constraint =
        value["max_steps_per_constraint"].get<std::size_t>();
  }
  if (value.contains("exact_linear_fast_path")) {
    c.exact_linear_fast_path = value["exact_linear_fast_path"].get<bool>();
  }
  return c;
}

Json to_json(const Certificate& cert) {
  Json j;
  j["primal"] = cert.primal;
  j["dual"] = cert.dual;
  j["f_offset"] = cert.f_offset;
  j["violation"] = cert.violation;
  j["bound"] = cert.bound;
  j["certified_ratio"] = cert.certified_ratio;
  j["pd_gap"] = cert.pd_gap;
  j["pd_gap_limit"] = cert.pd_gap_limit;
  j["lower_bound"] = cert.lower_bound;
  j["per_term_violation"] = cert.per_term.per_term;
  j["zero_weight_terms"] = cert.per_term.zero_weight_terms;
  j["zero_weight_norms"] = cert.per_term.zero_weight_norms;
  j["chain"] = {{"dual_sum", cert.chain.dual_sum},
                {"y_ax", cert.chain.y_ax},
                {"mu_x", cert.chain.mu_x},
                {"holder", cert.chain.holder}};
  j["mu_drift"] = cert.mu_drift;
  j["min_slack"] = cert.min_slack;
  j["rows"] = cert.rows;
  j["ok"] = cert.ok();
  j["failures"] = cert.failures;
  return j;
}

Json to_json(const InstanceStats& stats) {
  return {{"d_observed", stats.d_observed},
          {"row_sparsity", stats.row_sparsity},
          {"max_group", stats.max_group},
          {"rho_observed", stats.rho_observed},
          {"rows", stats.rows}};
}

}  // namespace lqcover::cli
