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

#include "subsel/regress.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "parallel.hpp"
#include "subsel/error.hpp"

namespace subsel::regress {
namespace {

// An exact fit leaves a residual sum of squares at rounding level.
constexpr double kExactFitRss = 1e-20;

ColumnSummary center_and_scale(Eigen::Ref<Eigen::VectorXd> column,
                               const std::string& label) {
  ColumnSummary summary;
  summary.mean = column.mean();
  const double raw_scale = std::max(1.0, column.cwiseAbs().maxCoeff());
  column.array() -= summary.mean;
  summary.centered_norm = column.norm();
  if (!(summary.centered_norm > 1e-12 * raw_scale * std::sqrt(column.size()))) {
    throw Error(ErrorKind::kConstantColumn, label + " has zero variance");
  }
  column /= summary.centered_norm;
  return summary;
}

std::string subset_label(Subset s) {
  std::string out = "{";
  bool first = true;
  for (int i : s.members()) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

void check_feature(const StandardizedDesign& design, int i) {
  if (i < 0 || i >= design.m()) {
    throw Error(ErrorKind::kInvalidArgument,
                "feature index " + std::to_string(i) + " out of range");
  }
}

void check_subset(const StandardizedDesign& design, Subset s) {
  if (!s.is_subset_of(design.all())) {
    throw Error(ErrorKind::kInvalidArgument,
                "subset " + subset_label(s) + " references unknown features");
  }
}

}  // namespace

StandardizedDesign standardize(const RawData& raw) {
  const auto n = raw.features.rows();
  const auto m = raw.features.cols();
  if (n < 2) throw Error(ErrorKind::kTooFewRows, "need at least 2 rows");
  if (m < 1) throw Error(ErrorKind::kInvalidArgument, "need at least 1 feature");
  if (m > kMaxSubsetFeatures) {
    throw Error(ErrorKind::kTooManyFeatures,
                "at most " + std::to_string(kMaxSubsetFeatures) + " features");
  }
  if (raw.response.size() != n) {
    throw Error(ErrorKind::kInvalidArgument, "response length != rows");
  }
  if (!raw.features.allFinite() || !raw.response.allFinite()) {
    throw Error(ErrorKind::kInvalidArgument, "non-finite input value");
  }

  std::vector<std::string> names = raw.names;
  if (names.empty()) {
    for (Eigen::Index j = 0; j < m; ++j) names.push_back("X" + std::to_string(j + 1));
  }
  if (static_cast<Eigen::Index>(names.size()) != m) {
    throw Error(ErrorKind::kInvalidArgument, "names length != feature count");
  }

  Eigen::MatrixXd x = raw.features;
  std::vector<ColumnSummary> summaries;
  summaries.reserve(static_cast<size_t>(m));
  for (Eigen::Index j = 0; j < m; ++j) {
    summaries.push_back(center_and_scale(
        x.col(j), "column " + std::to_string(j) + " (" + names[static_cast<size_t>(j)] + ")"));
  }
  Eigen::VectorXd y = raw.response;
  const ColumnSummary y_summary =
      center_and_scale(y, "response (" + raw.response_name + ")");

  return StandardizedDesign(std::move(x), std::move(y), std::move(names),
                            raw.response_name, std::move(summaries), y_summary);
}

Eigen::MatrixXd span_basis(const StandardizedDesign& design, Subset s) {
  check_subset(design, s);
  if (s.empty()) return Eigen::MatrixXd(design.n(), 0);
  const Eigen::MatrixXd xs = design.columns(s);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(xs, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cutoff = kRankTolerance * sv(0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  return svd.matrixU().leftCols(rank);
}

FitEntry fit(const StandardizedDesign& design, Subset s, FitCache* cache) {
  if (s.empty()) return {0.0, 0};
  if (cache != nullptr) {
    if (auto hit = cache->find(s)) return *hit;
  }
  const Eigen::MatrixXd basis = span_basis(design, s);
  const double r2 = (basis.transpose() * design.response()).squaredNorm();
  FitEntry entry{std::clamp(r2, 0.0, 1.0), static_cast<int>(basis.cols())};
  if (cache != nullptr) entry = cache->insert(s, entry);
  return entry;
}

double r_squared(const StandardizedDesign& design, Subset s, FitCache* cache) {
  return fit(design, s, cache).r_squared;
}

std::vector<double> r2_table(const StandardizedDesign& design, FitCache* cache,
                             int max_enum) {
  require_enumerable(design.m(), max_enum);
  const std::uint64_t count = std::uint64_t{1} << design.m();
  std::vector<double> table(count, 0.0);
  internal::parallel_for(count, [&](std::uint64_t mask) {
    table[mask] = r_squared(design, Subset(mask), cache);
  });
  return table;
}

Eigen::MatrixXd residualize(const StandardizedDesign& design, Subset targets,
                            Subset conditioners) {
  check_subset(design, targets);
  check_subset(design, conditioners);
  if (targets.intersects(conditioners)) {
    throw Error(ErrorKind::kInvalidArgument,
                "targets and conditioners must be disjoint");
  }
  Eigen::MatrixXd xa = design.columns(targets);
  if (conditioners.empty()) return xa;
  const Eigen::MatrixXd basis = span_basis(design, conditioners);
  xa -= basis * (basis.transpose() * xa);
  return xa;
}

double partial_correlation(const StandardizedDesign& design, int i, Subset s) {
  check_feature(design, i);
  if (s.contains(i)) {
    throw Error(ErrorKind::kInvalidArgument, "feature is in conditioning set");
  }
  const Eigen::VectorXd res = residualize(design, Subset::single(i), s).col(0);
  const double norm = res.norm();
  if (norm <= kDegenerateResidual) {
    throw Error(ErrorKind::kDegenerateResidual,
                "feature " + std::to_string(i) + " lies in span of " +
                    subset_label(s));
  }
  return std::clamp(design.response().dot(res) / norm, -1.0, 1.0);
}

double adjusted_partial_correlation(const StandardizedDesign& design, int i,
                                    Subset s) {
  const double semi = partial_correlation(design, i, s);
  const double unexplained = 1.0 - r_squared(design, s);
  if (unexplained <= 0.0) return 0.0;
  return std::clamp(semi / std::sqrt(unexplained), -1.0, 1.0);
}

LsFit ls_fit(const StandardizedDesign& design, Subset s) {
  check_subset(design, s);
  const int k = s.size();
  if (k > design.n() - 2) {
    throw Error(ErrorKind::kInsufficientDof,
                subset_label(s) + " leaves no residual degrees of freedom");
  }
  LsFit out;
  out.subset = s;
  out.features = s.members();
  out.degrees_of_freedom = design.n() - k - 1;
  const Eigen::VectorXd& y = design.response();
  if (k == 0) {
    out.residual_sum_squares = y.squaredNorm();
    out.sigma2 = out.residual_sum_squares / out.degrees_of_freedom;
    return out;
  }
  if (span_basis(design, s).cols() < k) {
    throw Error(ErrorKind::kRankDeficient, subset_label(s) + " is rank deficient");
  }

  const Eigen::MatrixXd xs = design.columns(s);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(xs);
  out.coefficients = qr.solve(y);
  const Eigen::MatrixXd r =
      qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
  out.inverse_gram_diagonal = r_inv.rowwise().squaredNorm();

  out.residual_sum_squares = (y - xs * out.coefficients).squaredNorm();
  out.exact = out.residual_sum_squares <= kExactFitRss;
  out.sigma2 = out.exact ? 0.0 : out.residual_sum_squares / out.degrees_of_freedom;
  out.standard_errors = (out.sigma2 * out.inverse_gram_diagonal.array()).sqrt();
  out.t_statistics.resize(k);
  for (int c = 0; c < k; ++c) {
    const double beta = out.coefficients(c);
    if (out.exact) {
      out.t_statistics(c) =
          beta == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), beta);
    } else {
      out.t_statistics(c) = beta / out.standard_errors(c);
    }
  }
  return out;
}

CoefDecomposition coef_decomposition(const StandardizedDesign& design, int i,
                                     int j) {
  check_feature(design, i);
  check_feature(design, j);
  if (i == j) throw Error(ErrorKind::kInvalidArgument, "i and j must differ");
  const Subset pair = Subset::single(i).with(j);
  if (span_basis(design, pair).cols() < 2) {
    throw Error(ErrorKind::kCollinear, "features " + std::to_string(i) + " and " +
                                           std::to_string(j) + " are collinear");
  }
  Eigen::MatrixXd xs(design.n(), 2);
  xs.col(0) = design.features().col(i);
  xs.col(1) = design.features().col(j);
  const Eigen::Vector2d beta = xs.colPivHouseholderQr().solve(design.response());

  const auto& xi = design.features().col(i);
  const auto& xj = design.features().col(j);
  CoefDecomposition out;
  out.marginal = design.response().dot(xi) / xi.squaredNorm();
  out.direct = beta(0);
  out.alpha = xj.dot(xi) / xi.squaredNorm();
  out.indirect = out.alpha * beta(1);
  return out;
}

StandardizedDesign gram_factory(const Eigen::MatrixXd& gram, int n,
                                std::vector<std::string> names,
                                std::string response_name) {
  const auto dim = gram.rows();
  if (dim < 2 || gram.cols() != dim) {
    throw Error(ErrorKind::kInvalidArgument,
                "gram must be square with the response and at least one feature");
  }
  const int k = static_cast<int>(dim) - 1;
  if ((gram - gram.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw Error(ErrorKind::kInvalidArgument, "gram is not symmetric");
  }
  if ((gram.diagonal().array() - 1.0).abs().maxCoeff() > 1e-10) {
    throw Error(ErrorKind::kInvalidArgument, "gram diagonal must be 1");
  }
  if (n < k + 2) {
    throw Error(ErrorKind::kTooFewRows,
                "n = " + std::to_string(n) + " < k + 2 = " + std::to_string(k + 2));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  if (eig.eigenvalues().minCoeff() < -1e-10) {
    throw Error(ErrorKind::kNotPsd, "gram has a negative eigenvalue");
  }
  // gram = F F' with one row of F per variable.
  const Eigen::MatrixXd factor =
      eig.eigenvectors() *
      eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();

  // DCT-II vectors 1..dim: orthonormal and orthogonal to the constant vector.
  Eigen::MatrixXd basis(n, dim);
  const double scale = std::sqrt(2.0 / n);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (int t = 0; t < n; ++t) {
      basis(t, c) = scale * std::cos(std::numbers::pi * static_cast<double>(c + 1) *
                                     (t + 0.5) / n);
    }
  }
  const Eigen::MatrixXd data = basis * factor.transpose();

  RawData raw;
  raw.response = data.col(0);
  raw.features = data.rightCols(k);
  if (names.empty()) {
    for (int j = 0; j < k; ++j) names.push_back("X" + std::to_string(j + 1));
  }
  raw.names = std::move(names);
  raw.response_name = std::move(response_name);
  return standardize(raw);
}

Eigen::MatrixXd sample_correlation(const StandardizedDesign& design) {
  Eigen::MatrixXd all(design.n(), design.m() + 1);
  all.col(0) = design.response();
  all.rightCols(design.m()) = design.features();
  return all.transpose() * all;
}

}  // namespace subsel::regress
