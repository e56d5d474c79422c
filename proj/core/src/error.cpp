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

#include "lqcover/error.hpp"

namespace lqcover {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid-argument";
    case ErrorCode::kInvalidExponent:
      return "invalid-exponent";
    case ErrorCode::kDomain:
      return "domain";
    case ErrorCode::kSingularGradient:
      return "singular-gradient";
    case ErrorCode::kHeaderViolation:
      return "header-violation";
    case ErrorCode::kIntegrationFailure:
      return "integration-failure";
    case ErrorCode::kIterationBound:
      return "iteration-bound";
    case ErrorCode::kCertificateFailure:
      return "certificate-failure";
    case ErrorCode::kInfeasible:
      return "infeasible";
    case ErrorCode::kUnreachable:
      return "unreachable";
    case ErrorCode::kScaling:
      return "scaling";
    case ErrorCode::kParse:
      return "parse";
  }
  return "unknown";
}

void fail(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(to_string(code)) + ": " + what);
}

}  // namespace lqcover
