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

#include "subsel/setfun.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "subsel/datasets.hpp"
#include "subsel/regress.hpp"

namespace subsel {
namespace {

using setfun::CheckMode;
using testing::error_kind;

StandardizedDesign orthogonal() {
  return regress::gram_factory(testing::orthogonal_gram({0.5, -0.3, 0.2, 0.4}), 10);
}

StandardizedDesign miller() { return regress::standardize(datasets::miller_table()); }

TEST(CheckSubmodular, ModularDesignHasNoViolations) {
  const auto d = orthogonal();
  for (auto mode : {CheckMode::kDefinition, CheckMode::kFirstOrder, CheckMode::kSecondOrder}) {
    EXPECT_TRUE(setfun::check_submodular(d, mode).empty()) << setfun::to_string(mode);
  }
  EXPECT_TRUE(setfun::find_suppressors(d).empty());
  const auto g = setfun::empirical_gammas(d);
  EXPECT_NEAR(g.gamma_s2, 1.0, 1e-10);
  EXPECT_NEAR(g.gamma_s, 1.0, 1e-10);
}

TEST(CheckSubmodular, MillerViolationsReplay) {
  const auto d = miller();
  for (auto mode : {CheckMode::kDefinition, CheckMode::kFirstOrder, CheckMode::kSecondOrder}) {
    const auto v = setfun::check_submodular(d, mode);
    ASSERT_FALSE(v.empty());
    for (const auto& c : v.certificates) {
      const auto r = setfun::replay(d, c);
      EXPECT_NEAR(r.lhs, c.lhs, 1e-12);
      EXPECT_NEAR(r.rhs, c.rhs, 1e-12);
      EXPECT_GT(r.deficit, 0.0);
    }
  }
  // Conditioning on X2 exposes X1 completely.
  const auto top = setfun::check_submodular(d, CheckMode::kSecondOrder).certificates.front();
  EXPECT_EQ(top.a, Subset{});
  EXPECT_EQ(top.i, 0);
  EXPECT_EQ(top.j, 1);
  EXPECT_NEAR(top.rhs, 1.0, 1e-4);
}

TEST(CheckSubmodular, FormsAgreeAcrossSeeds) {
  int agreed_violating = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto d = testing::random_design(5, seed);
    const bool def = setfun::check_submodular(d, CheckMode::kDefinition).empty();
    const bool first = setfun::check_submodular(d, CheckMode::kFirstOrder).empty();
    const bool second = setfun::check_submodular(d, CheckMode::kSecondOrder).empty();
    EXPECT_EQ(def, second) << seed;
    EXPECT_EQ(first, second) << seed;
    if (!second) ++agreed_violating;
  }
  EXPECT_GT(agreed_violating, 0);
}

TEST(CheckSubmodular, CertificateCapKeepsLargestDeficits) {
  const auto d = testing::random_design(6, 3);
  const auto all = setfun::check_submodular(d, CheckMode::kFirstOrder);
  ASSERT_GT(all.total, 5u);
  setfun::CheckOptions capped;
  capped.max_certificates = 5;
  const auto top = setfun::check_submodular(d, CheckMode::kFirstOrder, capped);
  EXPECT_EQ(top.total, all.total);
  ASSERT_EQ(top.certificates.size(), 5u);
  for (size_t c = 0; c < 5; ++c) {
    EXPECT_EQ(top.certificates[c].deficit, all.certificates[c].deficit);
  }
  EXPECT_TRUE(std::is_sorted(all.certificates.begin(), all.certificates.end(),
                             [](const auto& a, const auto& b) { return a.deficit > b.deficit; }));
}

TEST(Suppressors, MillerPairSuppressesEachOther) {
  const auto v = setfun::find_suppressors(miller());
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v.certificates.front().i, 0);
  EXPECT_EQ(v.certificates.front().j, 1);
  EXPECT_NEAR(v.certificates.front().lhs, 0.0, 1e-12);
}

// gamma_s2 by direct enumeration of correlation-matrix R^2 values.
double gamma_s2_oracle(const Eigen::MatrixXd& g, int m) {
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t a = 0; a < (1u << m); ++a) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        if (i == j || (a >> i & 1) || (a >> j & 1)) continue;
        const Subset s(a);
        const double num = testing::r2_from_gram(g, s.with(i)) - testing::r2_from_gram(g, s);
        const double den = testing::r2_from_gram(g, s.with(i).with(j)) -
                           testing::r2_from_gram(g, s.with(j));
        if (den < setfun::kSkipDenominator) continue;
        best = std::min(best, std::max(0.0, num) / den);
      }
    }
  }
  return best;
}

TEST(EmpiricalGamma, MatchesEnumerationOracle) {
  for (std::uint64_t seed = 40; seed < 45; ++seed) {
    std::mt19937_64 rng(seed);
    const Eigen::MatrixXd g = testing::random_gram(4, rng);
    const auto d = regress::gram_factory(g, 12);
    EXPECT_NEAR(setfun::empirical_gamma_s2(d).gamma_s2, gamma_s2_oracle(g, 4), 1e-8);
  }
}

TEST(EmpiricalGamma, FirstOrderIsAtMostSecondOrder) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = setfun::empirical_gammas(testing::random_design(5, seed));
    EXPECT_LE(g.gamma_s, g.gamma_s2 + 1e-12);
  }
}

TEST(EmpiricalGamma, WitnessReproducesValue) {
  const auto d = testing::random_design(5, 7);
  const auto g = setfun::empirical_gamma_s2(d);
  const auto& w = g.witness_s2;
  const double num = setfun::delta(d, Subset::single(w.i), w.a);
  const double den = setfun::delta(d, Subset::single(w.i), w.b);
  EXPECT_NEAR(std::max(0.0, num) / den, g.gamma_s2, 1e-10);
}

TEST(ChainLowerBound, TelescopedPower) {
  EXPECT_NEAR(setfun::chain_lower_bound(0.7, 1), 0.7, 1e-12);
  for (int k = 1; k <= 6; ++k) {
    EXPECT_NEAR(setfun::chain_lower_bound(0.8, k), std::pow(0.8, k), 1e-12);
  }
  EXPECT_EQ(setfun::chain_lower_bound(1.0, 5), 1.0);
  EXPECT_EQ(error_kind([] { setfun::chain_lower_bound(0.0, 2); }), ErrorKind::kOutOfDomain);
  EXPECT_EQ(error_kind([] { setfun::chain_lower_bound(0.5, 0); }), ErrorKind::kOutOfDomain);
}

}  // namespace
}  // namespace subsel
