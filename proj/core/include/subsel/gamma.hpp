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

#ifndef SUBSEL_GAMMA_HPP_
#define SUBSEL_GAMMA_HPP_

#include <cstdint>
#include <string_view>

#include "subsel/design.hpp"
#include "subsel/fit_cache.hpp"
#include "subsel/subset.hpp"

namespace subsel::gamma {

enum class CardinalityMode {
  kAtMostK,  // |T| in 1..k; singleton T contribute ratio 1
  kExactlyK  // |T| == k
};

std::string_view to_string(CardinalityMode mode);

struct RatioQuery {
  Subset base;  // S
  int k = 2;
  CardinalityMode mode = CardinalityMode::kExactlyK;
};

struct RatioResult {
  double gamma_sr = 0.0;
  Subset argmin;  // worst-case T
  std::uint64_t compared = 0;
  std::uint64_t skipped = 0;  // T with Delta_S(T) below the skip threshold
};

/// Submodularity ratio: the minimum over admissible T disjoint from S of
///   sum_{t in T} Delta_S(t) / Delta_S(T).
/// Throws TooManyFeatures, InvalidArgument (|S| + k > m or k < 1) and
/// EmptyCandidateSet when every T is skipped.
RatioResult submodularity_ratio(const StandardizedDesign& design,
                                const RatioQuery& query,
                                FitCache* cache = nullptr,
                                int max_enum = kDefaultMaxEnum);

/// Closed-form diagnostics for a two-feature problem given the marginal
/// correlations r_y1, r_y2 and the feature correlation r12.
struct PairDiagnostics {
  double r_y1 = 0.0;
  double r_y2 = 0.0;
  double r12 = 0.0;
  double gamma1 = 0.0;         // Delta(X1) / Delta_{X2}(X1)
  double gamma2 = 0.0;         // Delta(X2) / Delta_{X1}(X2)
  double gamma_s2_pair = 0.0;  // min(gamma1, gamma2)
  double gamma_sr_pair = 0.0;  // (Delta(1) + Delta(2)) / Delta(1, 2)
  /// (Delta(1) + Delta(2)) / (2 Delta(1, 2) - Delta(1) - Delta(2)).
  double sum_bound = 0.0;
  double joint_r2 = 0.0;
};

/// Throws InfeasibleCorrelations when |r| >= 1 for any input or the implied
/// joint R^2 exceeds 1. Zero denominators give +infinity (or 1 for 0/0,
/// where the inequality holds with equality).
PairDiagnostics gamma_pair(double r_y1, double r_y2, double r12);

}  // namespace subsel::gamma

#endif  // SUBSEL_GAMMA_HPP_
