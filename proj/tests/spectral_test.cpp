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

#include "subsel/spectral.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "subsel/regress.hpp"

namespace subsel {
namespace {

using testing::error_kind;

Eigen::MatrixXd random_psd(int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return testing::random_gram(m, rng).bottomRightCorner(m, m);
}

// Smallest singular value of each principal block; equals the smallest
// eigenvalue for a PSD block.
double sparse_oracle(const Eigen::MatrixXd& sigma, int k) {
  const int m = static_cast<int>(sigma.rows());
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << m); ++s) {
    const auto idx = Subset(s).members();
    if (static_cast<int>(idx.size()) > k) continue;
    Eigen::MatrixXd block(idx.size(), idx.size());
    for (size_t a = 0; a < idx.size(); ++a) {
      for (size_t b = 0; b < idx.size(); ++b) block(a, b) = sigma(idx[a], idx[b]);
    }
    const auto sv = block.jacobiSvd().singularValues();
    best = std::min(best, sv(sv.size() - 1));
  }
  return best;
}

TEST(SparseEigen, Anchors) {
  for (int k = 1; k <= 4; ++k) {
    EXPECT_NEAR(spectral::sparse_min_eigenvalue(Eigen::MatrixXd::Identity(4, 4), k).value, 1.0,
                1e-14);
  }
  Eigen::Matrix2d c;
  c << 1, 0.5, 0.5, 1;
  const auto e = spectral::sparse_min_eigenvalue(c, 2);
  EXPECT_NEAR(e.value, 0.5, 1e-14);
  EXPECT_EQ(e.support, (Subset{0, 1}));
}

TEST(SparseEigen, MatchesOracleAndIsMonotone) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Eigen::MatrixXd sigma = random_psd(8, seed);
    double last = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 8; ++k) {
      const double v = spectral::sparse_min_eigenvalue(sigma, k).value;
      EXPECT_NEAR(v, sparse_oracle(sigma, k), 1e-8);
      EXPECT_LE(v, last + 1e-15);
      last = v;
    }
  }
}

TEST(SparseEigen, Errors) {
  EXPECT_EQ(error_kind([] { spectral::sparse_min_eigenvalue(Eigen::MatrixXd::Identity(3, 3), 4); }),
            ErrorKind::kInvalidArgument);
  Eigen::Matrix2d asym;
  asym << 1, 0.2, 0.4, 1;
  EXPECT_EQ(error_kind([&] { spectral::sparse_min_eigenvalue(asym, 1); }),
            ErrorKind::kInvalidArgument);
  EXPECT_EQ(error_kind([] {
              spectral::sparse_min_eigenvalue(Eigen::MatrixXd::Identity(6, 6), 2, 5);
            }),
            ErrorKind::kTooManyFeatures);
}

TEST(RestrictedEigen, IdentityIsOne) {
  const auto r = spectral::restricted_eigenvalue(Eigen::MatrixXd::Identity(5, 5), {Subset{0, 2}, 3.0});
  EXPECT_NEAR(r.value, 1.0, 1e-12);
  EXPECT_TRUE(r.is_heuristic);
  for (int i : {1, 3, 4}) EXPECT_NEAR(r.certificate(i), 0.0, 1e-12);
}

TEST(RestrictedEigen, TwoByTwoMatchesIntervalSearch) {
  for (double rho : {-0.8, -0.3, 0.45, 0.9}) {
    for (double alpha : {1.0, 2.0}) {
      Eigen::Matrix2d c;
      c << 1, rho, rho, 1;
      // beta_1 = 1, beta_2 in [-alpha, alpha]: grid then golden-section refine.
      auto f = [&](double b) { return 1.0 + 2.0 * rho * b + b * b; };
      double lo = -alpha, hi = alpha;
      for (int it = 0; it < 200; ++it) {
        const double m1 = lo + (hi - lo) * 0.381966, m2 = lo + (hi - lo) * 0.618034;
        if (f(m1) < f(m2)) {
          hi = m2;
        } else {
          lo = m1;
        }
      }
      const auto r = spectral::restricted_eigenvalue(c, {Subset{0}, alpha});
      EXPECT_NEAR(r.value, f(0.5 * (lo + hi)), 1e-8) << rho << " " << alpha;
    }
  }
}

TEST(RestrictedEigen, NonincreasingInAlphaAndBelowBlockEigen) {
  Eigen::Matrix3d c;
  c << 1, 0.8, 0.7, 0.8, 1, 0.75, 0.7, 0.75, 1;
  const spectral::ConeSpec base{Subset{0, 1}, 1.0};
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> block(c.topLeftCorner(2, 2));
  double last = std::numeric_limits<double>::infinity();
  for (double alpha : {1.0, 2.0, 4.0}) {
    const auto r = spectral::restricted_eigenvalue(c, {base.s, alpha});
    EXPECT_LE(r.value, last + 1e-10);
    EXPECT_LE(r.value, block.eigenvalues()(0) + 1e-10);
    EXPECT_TRUE(spectral::in_cone({base.s, alpha}, r.certificate));
    EXPECT_NEAR(spectral::re_objective(c, base.s, r.certificate), r.value, 1e-10);
    last = r.value;
  }
}

TEST(RestrictedEigen, CertificatesOnRandomMatrices) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Eigen::MatrixXd sigma = random_psd(6, seed);
    const spectral::ConeSpec cone{Subset{1, 3, 4}, 1.5};
    const auto r = spectral::restricted_eigenvalue(sigma, cone, {4, 100, seed});
    EXPECT_TRUE(spectral::in_cone(cone, r.certificate));
    EXPECT_NEAR(spectral::re_objective(sigma, cone.s, r.certificate), r.value, 1e-10);
    EXPECT_GE(r.value, -1e-10);
  }
}

TEST(RestrictedEigen, Errors) {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(3, 3);
  EXPECT_EQ(error_kind([&] { spectral::restricted_eigenvalue(id, {Subset{0}, 0.5}); }),
            ErrorKind::kInvalidArgument);
  EXPECT_EQ(error_kind([&] { spectral::restricted_eigenvalue(id, {Subset{}, 1.0}); }),
            ErrorKind::kInvalidArgument);
}

TEST(GammaVsSpectral, Anchors) {
  const auto orth = regress::gram_factory(testing::orthogonal_gram({0.3, 0.4, 0.5}), 8);
  const auto o = spectral::gamma_vs_spectral(orth, Subset{}, 2);
  EXPECT_NEAR(o.gamma_sr, 1.0, 1e-10);
  EXPECT_NEAR(o.lambda_min, 1.0, 1e-10);
  EXPECT_TRUE(o.holds);

  Eigen::Matrix3d g;
  g << 1, 0.5, 0.5, 0.5, 1, 0.5, 0.5, 0.5, 1;
  const auto p = spectral::gamma_vs_spectral(regress::gram_factory(g, 8), Subset{}, 2);
  EXPECT_NEAR(p.gamma_sr, 1.5, 1e-10);
  EXPECT_NEAR(p.lambda_min, 0.5, 1e-10);
  EXPECT_TRUE(p.holds);
}

}  // namespace
}  // namespace subsel
