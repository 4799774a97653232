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

#ifndef SUBSEL_DATASETS_HPP_
#define SUBSEL_DATASETS_HPP_

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "subsel/design.hpp"

namespace subsel::datasets {

/// Four rows, three features. Y = X1 - X2 exactly, yet X3 has the largest
/// marginal correlation with Y.
RawData miller_table();

/// Population correlation matrix, response first, of
///   X_i = Z_i + e_i (i < p),  X_p = Z_p - sum_{i<p} e_i,  Y = sum_i Z_i
/// with Z_i ~ N(0, sigma_z^2) and e_i ~ N(0, sigma_eps^2) independent.
/// Throws InvalidArgument unless p >= 2 and both sigmas are positive.
Eigen::MatrixXd suppressor_population(int p, double sigma_z, double sigma_eps);

/// Exact n-row realization of suppressor_population via gram_factory.
StandardizedDesign suppressor_design(int p, double sigma_z, double sigma_eps,
                                     int n);

/// Seeded stream of standard normals.
///
/// Draws come from std::mt19937_64 seeded with `seed`. Each 64-bit output x
/// maps to u = ((x >> 11) + 0.5) * 2^-53 in (0, 1). Consecutive uniforms
/// (u1, u2) give the Box-Muller pair sqrt(-2 ln u1) cos(2 pi u2) and
/// sqrt(-2 ln u1) sin(2 pi u2), returned in that order.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}
  double next();

 private:
  double uniform();

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Y = X beta + sigma_noise * e with rows of X drawn from N(0, correlation).
/// Per row the stream yields m feature normals, then one noise normal; the
/// feature normals are mapped through F = V sqrt(Lambda) from the
/// eigendecomposition of `correlation`. Throws NotPSD, TooFewRows
/// (n < m + 2) and InvalidArgument for shape mismatches.
RawData random_gaussian(int n, int m, const Eigen::MatrixXd& correlation,
                        const Eigen::VectorXd& beta, double sigma_noise,
                        std::uint64_t seed);

}  // namespace subsel::datasets

#endif  // SUBSEL_DATASETS_HPP_
