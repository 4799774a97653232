// Copyright 2026 The Authors.
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

#include "subsel/error.hpp"

namespace subsel {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kConstantColumn: return "ConstantColumn";
    case ErrorKind::kDegenerateResidual: return "DegenerateResidual";
    case ErrorKind::kRankDeficient: return "RankDeficient";
    case ErrorKind::kInsufficientDof: return "InsufficientDof";
    case ErrorKind::kCollinear: return "Collinear";
    case ErrorKind::kNotPsd: return "NotPSD";
    case ErrorKind::kTooFewRows: return "TooFewRows";
    case ErrorKind::kTooManyFeatures: return "TooManyFeatures";
    case ErrorKind::kOutOfDomain: return "OutOfDomain";
    case ErrorKind::kEmptyCandidateSet: return "EmptyCandidateSet";
    case ErrorKind::kInfeasibleCorrelations: return "InfeasibleCorrelations";
    case ErrorKind::kInfeasibleAngles: return "InfeasibleAngles";
    case ErrorKind::kZeroBeta: return "ZeroBeta";
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kIo: return "IoError";
  }
  return "Unknown";
}

}  // namespace subsel
