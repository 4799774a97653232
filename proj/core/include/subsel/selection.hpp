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

// Greedy, exhaustive and screening selectors over a StandardizedDesign.
// Ties break toward the lowest feature index, then the smallest mask.

#ifndef SUBSEL_SELECTION_HPP_
#define SUBSEL_SELECTION_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "subsel/design.hpp"
#include "subsel/fit_cache.hpp"
#include "subsel/subset.hpp"

namespace subsel::selection {

/// Gains closer than this are treated as tied.
inline constexpr double kTieTolerance = 1e-12;

enum class StopReason { kKReached, kTStop, kExhausted };

std::string_view to_string(StopReason reason);

struct SelectionStep {
  int feature = -1;
  double delta_r2 = 0.0;
  double cumulative_r2 = 0.0;
  /// |t| of the newly added coefficient in the enlarged model. Empty when
  /// the model leaves no residual degrees of freedom; infinite for an
  /// exact fit.
  std::optional<double> marginal_t;
  int round = 0;  // screening round (1-based); 0 for non-iterated selectors
};

struct SelectionTrace {
  std::string algorithm;
  std::vector<SelectionStep> steps;
  StopReason stop = StopReason::kKReached;

  Subset selected() const;
  std::vector<int> order() const;
  double final_r2() const { return steps.empty() ? 0.0 : steps.back().cumulative_r2; }
};

/// |t| for adding a feature with gain `delta` to a model whose R^2 becomes
/// `r2_new` with `size_new` features on n rows.
std::optional<double> marginal_t(double delta, double r2_new, int size_new, int n);

/// Adds the feature with the largest R^2 gain until k features are chosen.
/// With t_stop set, stops once the best remaining |t| fails to exceed it;
/// the first step is always taken. Throws InvalidArgument unless 1 <= k <= m.
SelectionTrace forward_stepwise(const StandardizedDesign& design, int k,
                                std::optional<double> t_stop = std::nullopt,
                                FitCache* cache = nullptr);

struct BestSubset {
  Subset subset;
  double r_squared = 0.0;
};

/// Largest R^2 over all subsets with at most k features.
BestSubset best_subset(const StandardizedDesign& design, int k,
                       FitCache* cache = nullptr, int max_enum = kDefaultMaxEnum);

/// Largest R^2 over subsets with exactly k features.
BestSubset best_subset_exact(const StandardizedDesign& design, int k,
                             FitCache* cache = nullptr,
                             int max_enum = kDefaultMaxEnum);

struct L0Point {
  double lambda = 0.0;
  Subset subset;
  double r_squared = 0.0;
  double objective = 0.0;  // (1 - R^2) ||Y||^2 + lambda |S|, with ||Y|| = 1
};

/// Penalized best subset for each lambda; ties go to the smaller model.
std::vector<L0Point> l0_path(const StandardizedDesign& design,
                             std::span<const double> lambdas,
                             FitCache* cache = nullptr,
                             int max_enum = kDefaultMaxEnum);

struct NwfResult {
  int k = 0;
  Subset greedy;
  Subset optimal;
  double greedy_r2 = 0.0;
  double optimal_r2 = 0.0;
  double ratio = 1.0;
  double threshold = 0.0;  // 1 - 1/e
  bool guarantee_holds = true;
  bool submodular = true;             // exhaustive second-order check
  std::uint64_t violation_count = 0;  // second-order violations
};

/// Compares greedy to optimal R^2 against the 1 - 1/e guarantee and
/// reports whether the instance is submodular, without asserting either.
NwfResult nwf_check(const StandardizedDesign& design, int k,
                    FitCache* cache = nullptr, int max_enum = kDefaultMaxEnum);

/// Features ranked by |r_Yi| descending, first d returned.
std::vector<int> sis_screen(const StandardizedDesign& design, int d);

struct IsisRound {
  int round = 0;
  std::vector<int> picked;
  double r_squared = 0.0;  // after this round
  int skipped = 0;         // candidates lying in the span of the selection
};

struct IsisResult {
  std::vector<int> selected;  // in pick order
  std::vector<IsisRound> rounds;
  SelectionTrace trace;
  int skipped = 0;
};

/// Iterated screening: each round ranks the remaining features by their
/// correlation with Y after projecting off the current selection.
IsisResult isis(const StandardizedDesign& design, int d_per_round, int rounds,
                FitCache* cache = nullptr);

struct SisAssumption {
  double min_beta_margin = 0.0;  // min |beta_i| over the support
  double beta_threshold = 0.0;   // c2 / n^kappa
  double min_visibility = 0.0;   // min |r_Yi / beta_i| over the support
  int weakest_beta = -1;
  int least_visible = -1;
  bool beta_holds = false;
  bool visibility_holds = false;
  bool holds = false;
};

/// Checks min |beta_i| >= c2 / n^kappa and min |r_Yi / beta_i| >= c3 over
/// the support. `beta` has one entry per feature. Throws ZeroBeta when a
/// support coefficient vanishes and InvalidArgument for bad shapes or
/// kappa outside [0, 1/2).
SisAssumption sis_assumption_check(const StandardizedDesign& design,
                                   Subset support, std::span<const double> beta,
                                   double kappa, double c2, double c3);

}  // namespace subsel::selection

#endif  // SUBSEL_SELECTION_HPP_
