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

#include "subsel/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "subsel/error.hpp"
#include "subsel/regress.hpp"
#include "subsel/setfun.hpp"

namespace subsel::gamma {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Rounding can push a nonnegative denominator slightly below zero.
double ratio_or_sentinel(double num, double den) {
  if (den <= 0.0) return num <= 0.0 ? 1.0 : kInf;
  return num / den;
}

}  // namespace

std::string_view to_string(CardinalityMode mode) {
  return mode == CardinalityMode::kAtMostK ? "at_most_k" : "exactly_k";
}

RatioResult submodularity_ratio(const StandardizedDesign& design,
                                const RatioQuery& query, FitCache* cache,
                                int max_enum) {
  const int m = design.m();
  require_enumerable(m, max_enum);
  if (query.k < 1) throw Error(ErrorKind::kInvalidArgument, "k must be >= 1");
  if (!query.base.is_subset_of(design.all())) {
    throw Error(ErrorKind::kInvalidArgument, "base set references unknown features");
  }
  if (query.base.size() + query.k > m) {
    throw Error(ErrorKind::kInvalidArgument,
                "|S| + k = " + std::to_string(query.base.size() + query.k) +
                    " exceeds m = " + std::to_string(m));
  }

  const Subset s = query.base;
  const double r2_base = regress::r_squared(design, s, cache);
  std::vector<double> single_gain(static_cast<size_t>(m), 0.0);
  for (int t = 0; t < m; ++t) {
    if (!s.contains(t)) {
      single_gain[static_cast<size_t>(t)] =
          std::max(0.0, regress::r_squared(design, s.with(t), cache) - r2_base);
    }
  }

  RatioResult out;
  out.gamma_sr = kInf;
  bool found = false;
  const std::uint64_t free = (design.all() - s).bits();
  // Ascending nonempty submasks of the free features.
  for (std::uint64_t t = (0 - free) & free; t != 0; t = (t - free) & free) {
    const Subset candidate(t);
    const int size = candidate.size();
    if (size > query.k) continue;
    if (query.mode == CardinalityMode::kExactlyK && size != query.k) continue;
    const double den = regress::r_squared(design, s | candidate, cache) - r2_base;
    if (den < setfun::kSkipDenominator) {
      ++out.skipped;
      continue;
    }
    double num = 0.0;
    for (int i : candidate.members()) num += single_gain[static_cast<size_t>(i)];
    ++out.compared;
    const double ratio = num / den;
    if (!found || ratio < out.gamma_sr) {
      out.gamma_sr = ratio;
      out.argmin = candidate;
      found = true;
    }
  }
  if (!found) {
    throw Error(ErrorKind::kEmptyCandidateSet,
                "every candidate set has a vanishing joint gain");
  }
  return out;
}

PairDiagnostics gamma_pair(double r_y1, double r_y2, double r12) {
  if (!(std::abs(r_y1) < 1.0 && std::abs(r_y2) < 1.0 && std::abs(r12) < 1.0)) {
    throw Error(ErrorKind::kInfeasibleCorrelations,
                "correlations must lie strictly inside (-1, 1)");
  }
  PairDiagnostics out;
  out.r_y1 = r_y1;
  out.r_y2 = r_y2;
  out.r12 = r12;

  const double one_minus = 1.0 - r12 * r12;
  const double cross = 2.0 * r_y1 * r_y2 * r12;
  const double d1 = r_y1 * r_y1;
  const double d2 = r_y2 * r_y2;
  const double joint_num = d1 - cross + d2;
  out.joint_r2 = joint_num / one_minus;
  if (out.joint_r2 > 1.0 + 1e-12) {
    throw Error(ErrorKind::kInfeasibleCorrelations,
                "implied joint R^2 = " + std::to_string(out.joint_r2) + " > 1");
  }

  // Delta_{X2}(X1) = (r_y1^2 - 2 r_y1 r_y2 r12 + r_y2^2 r12^2) / (1 - r12^2)
  out.gamma1 = ratio_or_sentinel(d1 * one_minus, d1 - cross + d2 * r12 * r12);
  out.gamma2 = ratio_or_sentinel(d2 * one_minus, d2 - cross + d1 * r12 * r12);
  out.gamma_s2_pair = std::min(out.gamma1, out.gamma2);
  out.gamma_sr_pair = ratio_or_sentinel((d1 + d2) * one_minus, joint_num);
  out.sum_bound = ratio_or_sentinel(d1 + d2, 2.0 * out.joint_r2 - d1 - d2);
  return out;
}

}  // namespace subsel::gamma
