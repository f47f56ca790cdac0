// Copyright 2026 The QuotaMatch Authors.
//
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

#include "quotamatch/error.hpp"

namespace quotamatch {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kQuotaInfeasible: return "quota-infeasible";
    case ErrorCode::kNonPermutation: return "non-permutation";
    case ErrorCode::kScoreOutOfRange: return "score-out-of-range";
    case ErrorCode::kNonBinaryReward: return "non-binary-reward";
    case ErrorCode::kInstanceTooLarge: return "instance-too-large";
    case ErrorCode::kWorkerInOracleSet: return "worker-in-oracle-set";
    case ErrorCode::kStabilityViolation: return "stability-violation";
    case ErrorCode::kUnknownRule: return "unknown-rule";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kParse: return "parse";
  }
  return "unknown";
}

}  // namespace quotamatch
