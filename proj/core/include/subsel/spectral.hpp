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

#ifndef SUBSEL_SPECTRAL_HPP_
#define SUBSEL_SPECTRAL_HPP_

#include <cstdint>

#include <Eigen/Dense>

#include "subsel/design.hpp"
#include "subsel/fit_cache.hpp"
#include "subsel/gamma.hpp"
#include "subsel/subset.hpp"

namespace subsel::spectral {

struct SparseEigen {
  double value = 0.0;
  Subset support;  // smallest-mask support attaining the minimum
};

/// Minimum over supports of size 1..k of the smallest eigenvalue of the
/// principal submatrix. Throws InvalidArgument for non-symmetric input or
/// k outside [1, m], TooManyFeatures above the enumeration cap.
SparseEigen sparse_min_eigenvalue(const Eigen::MatrixXd& sigma, int k,
                                  int max_enum = kDefaultMaxEnum);

/// The cone { beta : ||beta_{S^c}||_1 <= alpha ||beta_S||_1 }.
struct ConeSpec {
  Subset s;
  double alpha = 1.0;
};

struct ReOptions {
  int restarts = 8;
  int iters = 200;           // outer iterations per restart
  std::uint64_t seed = 0;
};

struct ReResult {
  double value = 0.0;  // beta' Sigma beta / ||beta_S||^2 at the certificate
  Eigen::VectorXd certificate;
  int best_restart = 0;
  bool is_heuristic = true;  // an upper bound on the true minimum
};

/// Multi-start local minimization of beta' Sigma beta / ||beta_S||_2^2 over
/// the cone. Restart 0 starts from the smallest eigenvector of Sigma_SS, so
/// the result never exceeds lambda_min(Sigma_SS).
ReResult restricted_eigenvalue(const Eigen::MatrixXd& sigma, const ConeSpec& cone,
                               const ReOptions& options = {});

/// beta' Sigma beta / ||beta_S||^2 and whether beta lies in the cone.
double re_objective(const Eigen::MatrixXd& sigma, Subset s,
                    const Eigen::VectorXd& beta);
bool in_cone(const ConeSpec& cone, const Eigen::VectorXd& beta,
             double tolerance = 1e-10);

struct GammaSpectral {
  double gamma_sr = 0.0;
  double lambda_min = 0.0;
  int lambda_order = 0;  // |S| + k
  Subset support;        // witness of lambda_min
  bool holds = false;
};

/// gamma_sr(S, k) in exactly-k mode against lambda_min(|S| + k) of the
/// feature correlation matrix.
GammaSpectral gamma_vs_spectral(const StandardizedDesign& design, Subset s, int k,
                                FitCache* cache = nullptr,
                                int max_enum = kDefaultMaxEnum);

}  // namespace subsel::spectral

#endif  // SUBSEL_SPECTRAL_HPP_
