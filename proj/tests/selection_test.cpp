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

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "subsel/datasets.hpp"
#include "subsel/regress.hpp"

namespace subsel {
namespace {

using testing::error_kind;

StandardizedDesign miller() { return regress::standardize(datasets::miller_table()); }

StandardizedDesign orthogonal() {
  return regress::gram_factory(testing::orthogonal_gram({0.2, -0.5, 0.35, 0.1, 0.4}), 12);
}

TEST(Stepwise, MillerPicksX3First) {
  const auto t = selection::forward_stepwise(miller(), 3);
  ASSERT_EQ(t.steps.size(), 3u);
  EXPECT_EQ(t.steps[0].feature, 2);
  EXPECT_NEAR(t.steps[0].delta_r2, 0.2, 1e-12);
  EXPECT_NEAR(t.final_r2(), 1.0, 1e-10);
  EXPECT_EQ(t.stop, selection::StopReason::kKReached);
}

TEST(Stepwise, MillerTStopHaltsAfterX3) {
  const auto t = selection::forward_stepwise(miller(), 3, 2.0);
  ASSERT_EQ(t.steps.size(), 1u);
  EXPECT_EQ(t.steps[0].feature, 2);
  EXPECT_EQ(t.stop, selection::StopReason::kTStop);
}

TEST(Stepwise, OrthogonalOrderFollowsMarginals) {
  const auto t = selection::forward_stepwise(orthogonal(), 5);
  EXPECT_EQ(t.order(), (std::vector<int>{1, 4, 2, 0, 3}));
}

TEST(Stepwise, TraceInvariants) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto d = testing::random_design(6, seed);
    const auto t = selection::forward_stepwise(d, 6);
    const auto& r = d.response_correlation();
    EXPECT_NEAR(t.steps[0].delta_r2, r.cwiseAbs2().maxCoeff(), 1e-12);
    Subset prefix;
    double last = 0.0;
    for (const auto& s : t.steps) {
      prefix = prefix.with(s.feature);
      EXPECT_GE(s.cumulative_r2, last - 1e-12);
      EXPECT_NEAR(s.cumulative_r2, regress::r_squared(d, prefix), 1e-10);
      last = s.cumulative_r2;
    }
  }
}

TEST(Stepwise, MarginalTMatchesJointFit) {
  const auto d = testing::random_design(4, 3, 25);
  const auto t = selection::forward_stepwise(d, 2);
  const Subset chosen = t.selected();
  const auto fit = regress::ls_fit(d, chosen);
  const int pos = t.steps[1].feature == fit.features[0] ? 0 : 1;
  EXPECT_NEAR(*t.steps[1].marginal_t, std::abs(fit.t_statistics(pos)), 1e-8);
}

TEST(Stepwise, RejectsBadK) {
  EXPECT_EQ(error_kind([] { selection::forward_stepwise(miller(), 0); }),
            ErrorKind::kInvalidArgument);
  EXPECT_EQ(error_kind([] { selection::forward_stepwise(miller(), 4); }),
            ErrorKind::kInvalidArgument);
}

TEST(BestSubset, MillerPair) {
  const auto b = selection::best_subset(miller(), 2);
  EXPECT_EQ(b.subset, (Subset{0, 1}));
  EXPECT_NEAR(b.r_squared, 1.0, 1e-9);
}

TEST(BestSubset, MatchesFreshEnumerationAndDominatesGreedy) {
  for (std::uint64_t seed = 10; seed < 14; ++seed) {
    std::mt19937_64 rng(seed);
    const Eigen::MatrixXd g = testing::random_gram(8, rng);
    const auto d = regress::gram_factory(g, 20);
    FitCache cache;
    for (int k = 1; k <= 4; ++k) {
      const auto b = selection::best_subset(d, k, &cache);
      double oracle = 0.0;
      for (std::uint64_t s = 0; s < 256; ++s) {
        if (Subset(s).size() <= k) oracle = std::max(oracle, testing::r2_from_gram(g, Subset(s)));
      }
      EXPECT_NEAR(b.r_squared, oracle, 1e-10);
      EXPECT_LE(b.subset.size(), k);
      EXPECT_GE(b.r_squared, selection::forward_stepwise(d, k, {}, &cache).final_r2() - 1e-10);
    }
    EXPECT_NEAR(selection::best_subset(d, 8).r_squared, testing::r2_from_gram(g, Subset::full(8)),
                1e-10);
  }
}

TEST(L0Path, Anchors) {
  const auto d = miller();
  const std::vector<double> lambdas{0.0, 0.1, 0.5, 2.0};
  const auto path = selection::l0_path(d, lambdas);
  ASSERT_EQ(path.size(), 4u);
  EXPECT_NEAR(path[0].r_squared, 1.0, 1e-10);
  EXPECT_EQ(path[1].subset, (Subset{0, 1}));
  EXPECT_NEAR(path[1].objective, 0.2, 1e-9);
  EXPECT_TRUE(path[3].subset.empty());
  for (size_t c = 1; c < path.size(); ++c) {
    EXPECT_LE(path[c].subset.size(), path[c - 1].subset.size());
  }
  EXPECT_EQ(error_kind([&] {
              const std::vector<double> bad{-1.0};
              selection::l0_path(d, bad);
            }),
            ErrorKind::kInvalidArgument);
}

TEST(Nwf, MillerIsFlagged) {
  const auto r = selection::nwf_check(miller(), 2);
  EXPECT_NEAR(r.ratio, 0.2, 1e-4);
  EXPECT_FALSE(r.guarantee_holds);
  EXPECT_FALSE(r.submodular);
  EXPECT_NEAR(r.threshold, 0.6321, 1e-4);
}

TEST(Nwf, OrthogonalIsExact) {
  for (int k = 1; k <= 3; ++k) {
    const auto r = selection::nwf_check(orthogonal(), k);
    EXPECT_NEAR(r.ratio, 1.0, 1e-12);
    EXPECT_TRUE(r.submodular);
    EXPECT_TRUE(r.guarantee_holds);
  }
}

TEST(Sis, MillerAndOrthogonal) {
  EXPECT_EQ(selection::sis_screen(miller(), 1), (std::vector<int>{2}));
  const auto d = orthogonal();
  for (int k = 1; k <= 5; ++k) {
    EXPECT_EQ(Subset::of(selection::sis_screen(d, k)), selection::best_subset(d, k).subset);
  }
  EXPECT_EQ(error_kind([&] { selection::sis_screen(d, 0); }), ErrorKind::kInvalidArgument);
}

TEST(Sis, SuppressorScreenTakesEqualMarginsByIndex) {
  const auto d = datasets::suppressor_design(3, 1.0, 3.0, 10);
  EXPECT_EQ(selection::sis_screen(d, 2), (std::vector<int>{0, 1}));
}

TEST(Isis, OneRoundIsSis) {
  const auto d = testing::random_design(6, 4);
  EXPECT_EQ(selection::isis(d, 2, 1).selected, selection::sis_screen(d, 2));
}

TEST(Isis, MillerRecoversTruthByRoundThree) {
  const auto r = selection::isis(miller(), 1, 3);
  ASSERT_EQ(r.rounds.size(), 3u);
  EXPECT_EQ(r.selected.front(), 2);
  EXPECT_NEAR(r.rounds.back().r_squared, 1.0, 1e-10);
  for (const auto& s : r.trace.steps) EXPECT_GE(s.round, 1);
}

TEST(Isis, OrthogonalRoundsPartitionRanking) {
  const auto r = selection::isis(orthogonal(), 2, 2);
  EXPECT_EQ(r.selected, (std::vector<int>{1, 4, 2, 0}));
}

TEST(SisAssumption, OrthogonalFullVisibility) {
  const auto d = orthogonal();
  const std::vector<double> beta{0.2, -0.5, 0.35, 0.1, 0.4};
  const auto a = selection::sis_assumption_check(d, Subset{0, 1, 2, 3, 4}, beta, 0.25, 0.01, 0.9);
  EXPECT_NEAR(a.min_visibility, 1.0, 1e-10);
  EXPECT_TRUE(a.holds);
}

TEST(SisAssumption, MillerFails) {
  const std::vector<double> beta{1.0, -1.0, 0.0};
  const auto a = selection::sis_assumption_check(miller(), Subset{0, 1}, beta, 0.0, 0.5, 0.05);
  EXPECT_LT(a.min_visibility, 2e-3);
  EXPECT_TRUE(a.beta_holds);
  EXPECT_FALSE(a.holds);
  EXPECT_EQ(error_kind([&] {
              selection::sis_assumption_check(miller(), Subset{1, 2}, beta, 0.0, 0.5, 0.05);
            }),
            ErrorKind::kZeroBeta);
}

TEST(SisAssumption, SuppressorVisibilityShrinksWithNoise) {
  const std::vector<double> beta{1.0, 1.0, 1.0};
  double last = 2.0;
  for (double se : {1.0, 3.0, 10.0}) {
    const auto d = datasets::suppressor_design(3, 1.0, se, 10);
    const double v =
        selection::sis_assumption_check(d, Subset{0, 1, 2}, beta, 0.0, 0.0, 0.0).min_visibility;
    EXPECT_LT(v, last);
    last = v;
  }
}

}  // namespace
}  // namespace subsel
