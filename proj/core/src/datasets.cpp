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

#include "subsel/datasets.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "subsel/error.hpp"
#include "subsel/regress.hpp"

namespace subsel::datasets {
namespace {

std::vector<std::string> default_names(int m) {
  std::vector<std::string> names;
  for (int i = 1; i <= m; ++i) names.push_back("X" + std::to_string(i));
  return names;
}

}  // namespace

RawData miller_table() {
  RawData raw;
  raw.features.resize(4, 3);
  raw.features << 1000, 1002, 0,
                  -1000, -999, -1,
                  -1000, -1001, 1,
                  1000, 998, 0;
  raw.response.resize(4);
  raw.response << -2, -1, 1, 2;
  raw.names = default_names(3);
  return raw;
}

Eigen::MatrixXd suppressor_population(int p, double sigma_z, double sigma_eps) {
  if (p < 2) throw Error(ErrorKind::kInvalidArgument, "p must be >= 2");
  if (!(sigma_z > 0.0) || !(sigma_eps > 0.0) || !std::isfinite(sigma_z) ||
      !std::isfinite(sigma_eps)) {
    throw Error(ErrorKind::kInvalidArgument, "sigmas must be finite and positive");
  }
  const double z2 = sigma_z * sigma_z;
  const double e2 = sigma_eps * sigma_eps;
  // Index 0 is Y, then X_1..X_p.
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(p + 1, p + 1);
  cov(0, 0) = p * z2;
  for (int i = 1; i <= p; ++i) {
    cov(0, i) = cov(i, 0) = z2;
    cov(i, i) = z2 + e2;
  }
  cov(p, p) = z2 + (p - 1) * e2;
  for (int i = 1; i < p; ++i) cov(i, p) = cov(p, i) = -e2;

  const Eigen::VectorXd inv_sd = cov.diagonal().cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd corr = inv_sd.asDiagonal() * cov * inv_sd.asDiagonal();
  corr.diagonal().setOnes();
  return corr;
}

StandardizedDesign suppressor_design(int p, double sigma_z, double sigma_eps,
                                     int n) {
  return regress::gram_factory(suppressor_population(p, sigma_z, sigma_eps), n,
                               default_names(p));
}

double NormalStream::uniform() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double NormalStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

RawData random_gaussian(int n, int m, const Eigen::MatrixXd& correlation,
                        const Eigen::VectorXd& beta, double sigma_noise,
                        std::uint64_t seed) {
  if (m < 1) throw Error(ErrorKind::kInvalidArgument, "m must be >= 1");
  if (n < m + 2) {
    throw Error(ErrorKind::kTooFewRows, "n must be at least m + 2");
  }
  if (correlation.rows() != m || correlation.cols() != m || beta.size() != m) {
    throw Error(ErrorKind::kInvalidArgument,
                "correlation must be m x m and beta length m");
  }
  if (!(sigma_noise >= 0.0) || !std::isfinite(sigma_noise)) {
    throw Error(ErrorKind::kInvalidArgument, "sigma_noise must be finite and >= 0");
  }
  if ((correlation - correlation.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw Error(ErrorKind::kInvalidArgument, "correlation must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(correlation);
  if (eig.eigenvalues()(0) < -1e-10) {
    throw Error(ErrorKind::kNotPsd, "correlation matrix is not positive semidefinite");
  }
  const Eigen::MatrixXd factor =
      eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();

  RawData raw;
  raw.features.resize(n, m);
  raw.response.resize(n);
  raw.names = default_names(m);
  NormalStream stream(seed);
  Eigen::VectorXd z(m);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < m; ++c) z(c) = stream.next();
    const double noise = stream.next();
    raw.features.row(r) = (factor * z).transpose();
    raw.response(r) = raw.features.row(r).dot(beta) + sigma_noise * noise;
  }
  return raw;
}

}  // namespace subsel::datasets
