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

#include "subsel/selection.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "parallel.hpp"
#include "subsel/error.hpp"
#include "subsel/regress.hpp"
#include "subsel/setfun.hpp"

namespace subsel::selection {
namespace {

using Mask = std::uint64_t;

// Masks over m features whose popcount passes `keep`, ascending.
template <typename Keep>
std::vector<Mask> masks_where(int m, Keep keep) {
  std::vector<Mask> out;
  const Mask count = Mask{1} << m;
  for (Mask s = 0; s < count; ++s) {
    if (keep(std::popcount(s))) out.push_back(s);
  }
  return out;
}

BestSubset best_among(const StandardizedDesign& design,
                      const std::vector<Mask>& masks, FitCache* cache) {
  std::vector<double> r2(masks.size());
  internal::parallel_for(masks.size(), [&](std::uint64_t c) {
    r2[c] = regress::r_squared(design, Subset(masks[c]), cache);
  });
  BestSubset best{Subset(masks.front()), r2.front()};
  for (std::size_t c = 1; c < masks.size(); ++c) {
    if (r2[c] > best.r_squared + kTieTolerance) best = {Subset(masks[c]), r2[c]};
  }
  return best;
}

void check_k(const StandardizedDesign& design, int k, int lo) {
  if (k < lo || k > design.m()) {
    throw Error(ErrorKind::kInvalidArgument,
                "k = " + std::to_string(k) + " outside [" + std::to_string(lo) +
                    ", " + std::to_string(design.m()) + "]");
  }
}

SelectionStep make_step(const StandardizedDesign& design, int feature,
                        double r2_before, double r2_after, int size_after) {
  SelectionStep step;
  step.feature = feature;
  step.delta_r2 = r2_after - r2_before;
  step.cumulative_r2 = r2_after;
  step.marginal_t = marginal_t(step.delta_r2, r2_after, size_after, design.n());
  return step;
}

}  // namespace

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kKReached: return "k_reached";
    case StopReason::kTStop: return "t_stop";
    case StopReason::kExhausted: return "exhausted";
  }
  return "unknown";
}

Subset SelectionTrace::selected() const {
  Subset s;
  for (const auto& step : steps) s = s.with(step.feature);
  return s;
}

std::vector<int> SelectionTrace::order() const {
  std::vector<int> out;
  out.reserve(steps.size());
  for (const auto& step : steps) out.push_back(step.feature);
  return out;
}

std::optional<double> marginal_t(double delta, double r2_new, int size_new,
                                 int n) {
  const int dof = n - size_new - 1;
  if (dof < 1) return std::nullopt;
  const double rss = 1.0 - r2_new;
  const double gain = std::max(0.0, delta);
  if (rss <= 1e-14) {
    return gain > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  return std::sqrt(gain * dof / rss);
}

SelectionTrace forward_stepwise(const StandardizedDesign& design, int k,
                                std::optional<double> t_stop, FitCache* cache) {
  check_k(design, k, 1);
  SelectionTrace trace;
  trace.algorithm = "stepwise";
  Subset chosen;
  double r2 = 0.0;
  for (int step = 0; step < k; ++step) {
    int best = -1;
    double best_r2 = 0.0;
    for (int j = 0; j < design.m(); ++j) {
      if (chosen.contains(j)) continue;
      const double candidate = regress::r_squared(design, chosen.with(j), cache);
      if (best < 0 || candidate > best_r2 + kTieTolerance) {
        best = j;
        best_r2 = candidate;
      }
    }
    SelectionStep next = make_step(design, best, r2, best_r2, step + 1);
    if (step > 0 && t_stop && next.marginal_t && !(*next.marginal_t > *t_stop)) {
      trace.stop = StopReason::kTStop;
      return trace;
    }
    trace.steps.push_back(next);
    chosen = chosen.with(best);
    r2 = best_r2;
  }
  trace.stop = StopReason::kKReached;
  return trace;
}

BestSubset best_subset(const StandardizedDesign& design, int k, FitCache* cache,
                       int max_enum) {
  require_enumerable(design.m(), max_enum);
  check_k(design, k, 0);
  return best_among(design, masks_where(design.m(), [k](int c) { return c <= k; }),
                    cache);
}

BestSubset best_subset_exact(const StandardizedDesign& design, int k,
                             FitCache* cache, int max_enum) {
  require_enumerable(design.m(), max_enum);
  check_k(design, k, 0);
  return best_among(design, masks_where(design.m(), [k](int c) { return c == k; }),
                    cache);
}

std::vector<L0Point> l0_path(const StandardizedDesign& design,
                             std::span<const double> lambdas, FitCache* cache,
                             int max_enum) {
  require_enumerable(design.m(), max_enum);
  for (double lambda : lambdas) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
      throw Error(ErrorKind::kInvalidArgument, "lambda must be finite and >= 0");
    }
  }
  const std::vector<double> table = regress::r2_table(design, cache, max_enum);
  std::vector<BestSubset> per_size(static_cast<size_t>(design.m()) + 1);
  std::vector<bool> seen(per_size.size(), false);
  for (Mask s = 0; s < table.size(); ++s) {
    const auto c = static_cast<size_t>(std::popcount(s));
    if (!seen[c] || table[s] > per_size[c].r_squared + kTieTolerance) {
      per_size[c] = {Subset(s), table[s]};
      seen[c] = true;
    }
  }
  std::vector<L0Point> path;
  path.reserve(lambdas.size());
  for (double lambda : lambdas) {
    L0Point best;
    bool found = false;
    for (size_t c = 0; c < per_size.size(); ++c) {
      const double objective =
          (1.0 - per_size[c].r_squared) + lambda * static_cast<double>(c);
      if (!found || objective < best.objective - kTieTolerance) {
        best = {lambda, per_size[c].subset, per_size[c].r_squared, objective};
        found = true;
      }
    }
    path.push_back(best);
  }
  return path;
}

NwfResult nwf_check(const StandardizedDesign& design, int k, FitCache* cache,
                    int max_enum) {
  require_enumerable(design.m(), max_enum);
  NwfResult out;
  out.k = k;
  out.threshold = 1.0 - 1.0 / std::numbers::e;
  const SelectionTrace greedy = forward_stepwise(design, k, std::nullopt, cache);
  const BestSubset optimal = best_subset(design, k, cache, max_enum);
  out.greedy = greedy.selected();
  out.greedy_r2 = greedy.final_r2();
  out.optimal = optimal.subset;
  out.optimal_r2 = optimal.r_squared;
  out.ratio = out.optimal_r2 > 0.0 ? out.greedy_r2 / out.optimal_r2 : 1.0;
  out.guarantee_holds = out.ratio >= out.threshold - 1e-9;

  setfun::CheckOptions options;
  options.max_enum = max_enum;
  options.max_certificates = 0;
  const auto violations =
      setfun::check_submodular(design, setfun::CheckMode::kSecondOrder, options, cache);
  out.violation_count = violations.total;
  out.submodular = violations.empty();
  return out;
}

std::vector<int> sis_screen(const StandardizedDesign& design, int d) {
  check_k(design, d, 1);
  std::vector<int> order(static_cast<size_t>(design.m()));
  for (int i = 0; i < design.m(); ++i) order[static_cast<size_t>(i)] = i;
  const Eigen::VectorXd& r = design.response_correlation();
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(r(a)) > std::abs(r(b)) + kTieTolerance;
  });
  order.resize(static_cast<size_t>(d));
  return order;
}

IsisResult isis(const StandardizedDesign& design, int d_per_round, int rounds,
                FitCache* cache) {
  if (rounds < 1) throw Error(ErrorKind::kInvalidArgument, "rounds must be >= 1");
  if (d_per_round < 1) throw Error(ErrorKind::kInvalidArgument, "d must be >= 1");
  if (static_cast<long long>(d_per_round) * rounds > design.m()) {
    throw Error(ErrorKind::kInvalidArgument,
                "d * rounds exceeds the number of features");
  }
  IsisResult out;
  out.trace.algorithm = "isis";
  out.trace.stop = StopReason::kKReached;
  Subset chosen;
  double r2 = 0.0;
  for (int round = 1; round <= rounds; ++round) {
    IsisRound record;
    record.round = round;
    std::vector<std::pair<double, int>> scored;
    for (int i = 0; i < design.m(); ++i) {
      if (chosen.contains(i)) continue;
      try {
        scored.emplace_back(std::abs(regress::partial_correlation(design, i, chosen)), i);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kDegenerateResidual) throw;
        ++record.skipped;
      }
    }
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    const auto take = std::min(scored.size(), static_cast<size_t>(d_per_round));
    for (size_t c = 0; c < take; ++c) {
      const int feature = scored[c].second;
      const Subset next = chosen.with(feature);
      const double r2_next = regress::r_squared(design, next, cache);
      SelectionStep step = make_step(design, feature, r2, r2_next, next.size());
      step.round = round;
      out.trace.steps.push_back(step);
      record.picked.push_back(feature);
      out.selected.push_back(feature);
      chosen = next;
      r2 = r2_next;
    }
    record.r_squared = r2;
    out.skipped += record.skipped;
    out.rounds.push_back(record);
    if (take < static_cast<size_t>(d_per_round)) {
      out.trace.stop = StopReason::kExhausted;
      break;
    }
  }
  return out;
}

SisAssumption sis_assumption_check(const StandardizedDesign& design,
                                   Subset support, std::span<const double> beta,
                                   double kappa, double c2, double c3) {
  if (static_cast<int>(beta.size()) != design.m()) {
    throw Error(ErrorKind::kInvalidArgument, "beta needs one entry per feature");
  }
  if (support.empty() || !support.is_subset_of(design.all())) {
    throw Error(ErrorKind::kInvalidArgument, "support must be a nonempty feature set");
  }
  if (!(kappa >= 0.0 && kappa < 0.5)) {
    throw Error(ErrorKind::kInvalidArgument, "kappa must lie in [0, 1/2)");
  }
  SisAssumption out;
  out.min_beta_margin = std::numeric_limits<double>::infinity();
  out.min_visibility = std::numeric_limits<double>::infinity();
  out.beta_threshold = c2 / std::pow(static_cast<double>(design.n()), kappa);
  const Eigen::VectorXd& r = design.response_correlation();
  for (int i : support.members()) {
    const double b = beta[static_cast<size_t>(i)];
    if (b == 0.0) {
      throw Error(ErrorKind::kZeroBeta,
                  "beta_" + std::to_string(i) + " is zero on the support");
    }
    if (std::abs(b) < out.min_beta_margin) {
      out.min_beta_margin = std::abs(b);
      out.weakest_beta = i;
    }
    const double visibility = std::abs(r(i) / b);
    if (visibility < out.min_visibility) {
      out.min_visibility = visibility;
      out.least_visible = i;
    }
  }
  out.beta_holds = out.min_beta_margin >= out.beta_threshold;
  out.visibility_holds = out.min_visibility >= c3;
  out.holds = out.beta_holds && out.visibility_holds;
  return out;
}

}  // namespace subsel::selection
