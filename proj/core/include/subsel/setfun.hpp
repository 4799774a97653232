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

// R^2 viewed as a set function over feature subsets.
//
// Every check here is exhaustive over 2^m (or 3^m, 4^m) subset
// combinations and refuses designs larger than the enumeration cap.
// Enumeration order is ascending by mask, and that order breaks all ties.

#ifndef SUBSEL_SETFUN_HPP_
#define SUBSEL_SETFUN_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "subsel/design.hpp"
#include "subsel/fit_cache.hpp"
#include "subsel/subset.hpp"

namespace subsel::setfun {

/// Ratios whose denominator falls below this are 0/0-like and skipped.
inline constexpr double kSkipDenominator = 1e-12;
inline constexpr double kDefaultViolationTolerance = 1e-9;

enum class ViolationForm { kDefinition, kFirstOrder, kSecondOrder, kSuppression };

std::string_view to_string(ViolationForm form);

/// A witnessed failure of one submodularity inequality, lhs >= rhs.
///
/// Which fields are populated depends on the form:
///   definition:   F(a) + F(b) >= F(a | b) + F(a & b)
///   first_order:  Delta_a(i) >= Delta_b(i), a strictly inside b, i outside b
///   second_order: Delta_a(i) >= Delta_{a+j}(i)
///   suppression:  |Cor(Y, X_{i.a-perp})| >= |Cor(Y, X_{i.(a+j)-perp})|
struct ViolationCertificate {
  ViolationForm form = ViolationForm::kSecondOrder;
  Subset a;
  Subset b;
  int i = -1;
  int j = -1;
  double lhs = 0.0;
  double rhs = 0.0;
  double deficit = 0.0;  // rhs - lhs
};

struct CheckOptions {
  double tolerance = kDefaultViolationTolerance;
  int max_enum = kDefaultMaxEnum;
  /// Keep only the largest-deficit certificates; `total` still counts all.
  std::size_t max_certificates = std::numeric_limits<std::size_t>::max();
};

struct ViolationSet {
  std::vector<ViolationCertificate> certificates;  // deficit descending
  std::uint64_t total = 0;
  bool empty() const { return total == 0; }
};

enum class CheckMode { kDefinition, kFirstOrder, kSecondOrder };

std::string_view to_string(CheckMode mode);

/// Delta_base(add) = R^2(add | base) - R^2(base).
double delta(const StandardizedDesign& design, Subset add, Subset base,
             FitCache* cache = nullptr);

ViolationSet check_submodular(const StandardizedDesign& design, CheckMode mode,
                              const CheckOptions& options = {},
                              FitCache* cache = nullptr);

/// Triples (S, i, j) where conditioning on j raises |Cor(Y, X_i)| given S.
ViolationSet find_suppressors(const StandardizedDesign& design,
                              const CheckOptions& options = {},
                              FitCache* cache = nullptr);

/// Recomputes a certificate's two sides from fresh, uncached fits.
ViolationCertificate replay(const StandardizedDesign& design,
                            const ViolationCertificate& certificate);

struct GammaWitness {
  Subset a;  // base set A
  Subset b;  // comparison set (A + j for the second-order form)
  int i = -1;
  int j = -1;
};

/// Approximate-submodularity constants: the minimum second-order ratio
/// Delta_A(i) / Delta_{A+j}(i) and the minimum first-order ratio
/// Delta_A(i) / Delta_B(i) over nested A inside B. A constant with no
/// informative ratio stays +infinity.
struct GammaEstimates {
  double gamma_s2 = std::numeric_limits<double>::infinity();
  double gamma_s = std::numeric_limits<double>::infinity();
  GammaWitness witness_s2;
  GammaWitness witness_s;
  std::uint64_t compared_s2 = 0;
  std::uint64_t compared_s = 0;
  std::uint64_t skipped_s2 = 0;
  std::uint64_t skipped_s = 0;
};

GammaEstimates empirical_gamma_s2(const StandardizedDesign& design,
                                  FitCache* cache = nullptr,
                                  int max_enum = kDefaultMaxEnum);
GammaEstimates empirical_gamma_s(const StandardizedDesign& design,
                                 FitCache* cache = nullptr,
                                 int max_enum = kDefaultMaxEnum);
/// Both constants from one R^2 table.
GammaEstimates empirical_gammas(const StandardizedDesign& design,
                                FitCache* cache = nullptr,
                                int max_enum = kDefaultMaxEnum);

/// Table-driven variants; `table` holds R^2 for all 2^m masks.
GammaEstimates gamma_s2_from_table(std::span<const double> table, int m);
GammaEstimates gamma_s_from_table(std::span<const double> table, int m);

/// Lower bound on gamma_s implied by gamma_s2 over a chain of k
/// second-order steps:
///   gamma_s2 / (gamma_s2 + (1 - gamma_s2) (1 - gamma_s2^-k) / (1 - gamma_s2^-1))
/// which telescopes to gamma_s2^k. Returns 1 for gamma_s2 = 1 and throws
/// OutOfDomain outside (0, 1] or for k < 1.
double chain_lower_bound(double gamma_s2, int k);

}  // namespace subsel::setfun

#endif  // SUBSEL_SETFUN_HPP_
