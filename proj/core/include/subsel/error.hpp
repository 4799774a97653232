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

#ifndef SUBSEL_ERROR_HPP_
#define SUBSEL_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace subsel {

enum class ErrorKind {
  kInvalidArgument,
  kConstantColumn,
  kDegenerateResidual,
  kRankDeficient,
  kInsufficientDof,
  kCollinear,
  kNotPsd,
  kTooFewRows,
  kTooManyFeatures,
  kOutOfDomain,
  kEmptyCandidateSet,
  kInfeasibleCorrelations,
  kInfeasibleAngles,
  kZeroBeta,
  kParse,
  kIo,
};

std::string_view to_string(ErrorKind kind);

// All library failures are reported through this exception; kind() lets
// callers branch without parsing the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace subsel

#endif  // SUBSEL_ERROR_HPP_
