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

// Linear-algebra substrate: standardization, projections, R^2 of feature
// subsets, partial correlations, least-squares fits and exact-Gram
// synthesis of finite samples.

#ifndef SUBSEL_REGRESS_HPP_
#define SUBSEL_REGRESS_HPP_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "subsel/design.hpp"
#include "subsel/fit_cache.hpp"
#include "subsel/subset.hpp"

namespace subsel::regress {

/// Singular values below this fraction of the largest are treated as zero.
inline constexpr double kRankTolerance = 1e-10;

/// Residual norms at or below this are "in the span" of the conditioners.
inline constexpr double kDegenerateResidual = 1e-10;

/// Centers every column to mean zero and scales it to unit l2 norm.
/// Throws ConstantColumn for a zero-variance feature or response.
StandardizedDesign standardize(const RawData& raw);

/// Orthonormal basis of span(X_S) from a thin SVD, dropping directions
/// whose singular value is below kRankTolerance * sigma_max.
Eigen::MatrixXd span_basis(const StandardizedDesign& design, Subset s);

/// R^2(S) = ||H_S Y||^2 for the standardized response. R^2(empty) = 0.
/// When `cache` is given, the value is read from / stored into it.
double r_squared(const StandardizedDesign& design, Subset s,
                 FitCache* cache = nullptr);

/// Same as r_squared but also reports the numerical rank of X_S.
FitEntry fit(const StandardizedDesign& design, Subset s,
             FitCache* cache = nullptr);

/// Dense table of R^2 for every subset of the m features, indexed by mask.
/// Throws TooManyFeatures when m exceeds max_enum.
std::vector<double> r2_table(const StandardizedDesign& design,
                             FitCache* cache = nullptr,
                             int max_enum = kDefaultMaxEnum);

/// (I - H_S) X_A, one column per member of `targets` in ascending order.
/// Columns are not renormalized. Requires targets and conditioners to be
/// disjoint.
Eigen::MatrixXd residualize(const StandardizedDesign& design, Subset targets,
                            Subset conditioners);

/// Cor(Y, X_{i.S-perp}) with Y left unadjusted; its square is
/// R^2(S + i) - R^2(S). Throws DegenerateResidual when X_i lies in span(X_S).
double partial_correlation(const StandardizedDesign& design, int i, Subset s);

/// Classical partial correlation Cor(Y_{.S-perp}, X_{i.S-perp}) where both
/// sides are adjusted. Its square is Delta_S(i) / (1 - R^2(S)).
double adjusted_partial_correlation(const StandardizedDesign& design, int i,
                                    Subset s);

struct LsFit {
  Subset subset;
  std::vector<int> features;  // ascending; aligned with the vectors below
  Eigen::VectorXd coefficients;
  Eigen::VectorXd standard_errors;
  Eigen::VectorXd t_statistics;  // +/-inf when the fit is exact
  /// Diagonal of (X_S' X_S)^{-1}; standard_errors = sqrt(sigma2 * this).
  Eigen::VectorXd inverse_gram_diagonal;
  double residual_sum_squares = 0.0;
  int degrees_of_freedom = 0;  // n - |S| - 1
  double sigma2 = 0.0;
  bool exact = false;
};

/// Least-squares fit on X_S with the intercept absorbed by centering.
/// Throws RankDeficient or InsufficientDof (|S| > n - 2).
LsFit ls_fit(const StandardizedDesign& design, Subset s);

struct CoefDecomposition {
  double marginal = 0.0;  // simple-regression slope of Y on X_i
  double direct = 0.0;    // coefficient of X_i in the fit on {i, j}
  double indirect = 0.0;  // alpha * coefficient of X_j in the fit on {i, j}
  double alpha = 0.0;     // slope of X_j regressed on X_i
};

/// Splits the simple-regression coefficient of feature i into the part
/// carried directly and the part routed through feature j.
CoefDecomposition coef_decomposition(const StandardizedDesign& design, int i,
                                     int j);

/// Builds an n-row dataset whose sample correlation matrix equals `gram`
/// (response first, then k features). The factor of gram is embedded into
/// an orthonormal basis orthogonal to the constant vector, so the result
/// is exact up to rounding. Throws NotPSD or TooFewRows (n < k + 2).
StandardizedDesign gram_factory(const Eigen::MatrixXd& gram, int n,
                                std::vector<std::string> names = {},
                                std::string response_name = "Y");

/// Sample correlations of (Y, X_1, ..., X_m), response first.
Eigen::MatrixXd sample_correlation(const StandardizedDesign& design);

}  // namespace subsel::regress

#endif  // SUBSEL_REGRESS_HPP_
