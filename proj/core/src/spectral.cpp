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

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "parallel.hpp"
#include "subsel/error.hpp"

namespace subsel::spectral {
namespace {

using Mask = std::uint64_t;

constexpr double kInnerTolerance = 1e-10;
constexpr int kInnerMaxIters = 20000;

void check_square_symmetric(const Eigen::MatrixXd& sigma) {
  if (sigma.rows() != sigma.cols() || sigma.rows() == 0) {
    throw Error(ErrorKind::kInvalidArgument, "matrix must be square and nonempty");
  }
  const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
  if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw Error(ErrorKind::kInvalidArgument, "matrix must be symmetric");
  }
}

Eigen::MatrixXd principal(const Eigen::MatrixXd& sigma, const std::vector<int>& a,
                          const std::vector<int>& b) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(a.size()),
                      static_cast<Eigen::Index>(b.size()));
  for (size_t r = 0; r < a.size(); ++r) {
    for (size_t c = 0; c < b.size(); ++c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = sigma(a[r], b[c]);
    }
  }
  return out;
}

// Euclidean projection onto { w : ||w||_1 <= radius } by sorting.
Eigen::VectorXd project_l1(const Eigen::VectorXd& v, double radius) {
  if (v.lpNorm<1>() <= radius) return v;
  if (radius <= 0.0) return Eigen::VectorXd::Zero(v.size());
  std::vector<double> mag(static_cast<size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) mag[static_cast<size_t>(i)] = std::abs(v(i));
  std::sort(mag.begin(), mag.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (size_t j = 0; j < mag.size(); ++j) {
    cumulative += mag[j];
    const double candidate = (cumulative - radius) / static_cast<double>(j + 1);
    if (mag[j] > candidate) theta = candidate;
  }
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out(i) = std::copysign(std::max(0.0, std::abs(v(i)) - theta), v(i));
  }
  const double norm = out.lpNorm<1>();
  if (norm > radius) out *= radius / norm;
  return out;
}

// Blocks of sigma split by S and its complement.
struct Blocks {
  Eigen::MatrixXd ss, sc, cc;
  double lipschitz = 0.0;  // of the inner gradient 2 (Sigma_cc w + Sigma_cs u)
};

// min_w u' ss u + 2 u' sc w + w' cc w over ||w||_1 <= radius, by FISTA.
double solve_inner(const Blocks& b, const Eigen::VectorXd& u, double radius,
                   Eigen::VectorXd& w) {
  const Eigen::VectorXd linear = b.sc.transpose() * u;
  auto value = [&](const Eigen::VectorXd& x) {
    return u.dot(b.ss * u) + 2.0 * linear.dot(x) + x.dot(b.cc * x);
  };
  if (w.size() == 0) return value(w);
  const double step = 1.0 / std::max(b.lipschitz, 1e-12);
  w = project_l1(w, radius);
  Eigen::VectorXd y = w;
  double t = 1.0;
  for (int it = 0; it < kInnerMaxIters; ++it) {
    const Eigen::VectorXd grad = 2.0 * (b.cc * y + linear);
    const Eigen::VectorXd next = project_l1(y - step * grad, radius);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const double moved = (next - w).norm();
    y = next + ((t - 1.0) / t_next) * (next - w);
    // Restart momentum when it stops helping.
    if (value(next) > value(w)) {
      y = next;
      t = 1.0;
    } else {
      t = t_next;
    }
    w = next;
    if (moved <= kInnerTolerance * (1.0 + w.norm())) break;
  }
  return value(w);
}

struct Local {
  double value = std::numeric_limits<double>::infinity();
  Eigen::VectorXd u, w;
};

Local descend(const Blocks& b, Eigen::VectorXd u, double alpha, int iters) {
  u.normalize();
  Local cur;
  cur.u = u;
  cur.w = Eigen::VectorXd::Zero(b.cc.rows());
  cur.value = solve_inner(b, cur.u, alpha * cur.u.lpNorm<1>(), cur.w);
  double eta = 1.0;
  for (int it = 0; it < iters && eta > 1e-14; ++it) {
    const Eigen::VectorXd grad = 2.0 * (b.ss * cur.u + b.sc * cur.w);
    const Eigen::VectorXd tangent = grad - cur.u.dot(grad) * cur.u;
    if (tangent.norm() < 1e-13) break;
    Local trial;
    trial.u = (cur.u - eta * tangent).normalized();
    trial.w = cur.w;
    trial.value = solve_inner(b, trial.u, alpha * trial.u.lpNorm<1>(), trial.w);
    if (trial.value < cur.value - 1e-15) {
      cur = std::move(trial);
      eta *= 2.0;
    } else {
      eta *= 0.5;
    }
  }
  return cur;
}

}  // namespace

SparseEigen sparse_min_eigenvalue(const Eigen::MatrixXd& sigma, int k,
                                  int max_enum) {
  check_square_symmetric(sigma);
  const int m = static_cast<int>(sigma.rows());
  require_enumerable(m, max_enum);
  if (k < 1 || k > m) {
    throw Error(ErrorKind::kInvalidArgument,
                "k = " + std::to_string(k) + " outside [1, " + std::to_string(m) + "]");
  }
  std::vector<Mask> masks;
  for (Mask s = 1; s < (Mask{1} << m); ++s) {
    if (std::popcount(s) <= k) masks.push_back(s);
  }
  std::vector<double> values(masks.size());
  internal::parallel_for(masks.size(), [&](std::uint64_t c) {
    const auto members = Subset(masks[c]).members();
    const Eigen::MatrixXd block = principal(sigma, members, members);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block, Eigen::EigenvaluesOnly);
    values[c] = solver.eigenvalues()(0);
  });
  SparseEigen out{values.front(), Subset(masks.front())};
  for (size_t c = 1; c < masks.size(); ++c) {
    if (values[c] < out.value) out = {values[c], Subset(masks[c])};
  }
  return out;
}

double re_objective(const Eigen::MatrixXd& sigma, Subset s,
                    const Eigen::VectorXd& beta) {
  double on_s = 0.0;
  for (int i : s.members()) on_s += beta(i) * beta(i);
  return beta.dot(sigma * beta) / on_s;
}

bool in_cone(const ConeSpec& cone, const Eigen::VectorXd& beta, double tolerance) {
  double on = 0.0;
  double off = 0.0;
  for (Eigen::Index i = 0; i < beta.size(); ++i) {
    (cone.s.contains(static_cast<int>(i)) ? on : off) += std::abs(beta(i));
  }
  return off <= cone.alpha * on + tolerance;
}

ReResult restricted_eigenvalue(const Eigen::MatrixXd& sigma, const ConeSpec& cone,
                               const ReOptions& options) {
  check_square_symmetric(sigma);
  const int m = static_cast<int>(sigma.rows());
  if (m > kMaxSubsetFeatures) {
    throw Error(ErrorKind::kTooManyFeatures, "too many features for a subset key");
  }
  if (cone.s.empty() || !cone.s.is_subset_of(Subset::full(m))) {
    throw Error(ErrorKind::kInvalidArgument, "S must be a nonempty feature set");
  }
  if (!(cone.alpha >= 1.0) || !std::isfinite(cone.alpha)) {
    throw Error(ErrorKind::kInvalidArgument, "alpha must be finite and >= 1");
  }
  if (options.restarts < 1 || options.iters < 0) {
    throw Error(ErrorKind::kInvalidArgument, "restarts must be >= 1, iters >= 0");
  }

  const std::vector<int> in = cone.s.members();
  const std::vector<int> out_idx = (Subset::full(m) - cone.s).members();
  Blocks b;
  b.ss = principal(sigma, in, in);
  b.sc = principal(sigma, in, out_idx);
  b.cc = principal(sigma, out_idx, out_idx);
  if (b.cc.size() > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> cc(b.cc, Eigen::EigenvaluesOnly);
    b.lipschitz = 2.0 * std::max(std::abs(cc.eigenvalues()(0)),
                                 std::abs(cc.eigenvalues()(cc.eigenvalues().size() - 1)));
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ss(b.ss);
  const Eigen::VectorXd seed0 = ss.eigenvectors().col(0);

  std::vector<Local> results(static_cast<size_t>(options.restarts));
  internal::parallel_for(
      results.size(),
      [&](std::uint64_t r) {
        Eigen::VectorXd start = seed0;
        if (r > 0) {
          std::mt19937_64 rng(options.seed + r);
          std::normal_distribution<double> normal;
          for (Eigen::Index i = 0; i < start.size(); ++i) start(i) = normal(rng);
          if (start.norm() == 0.0) start = seed0;
        }
        results[r] = descend(b, start, cone.alpha, options.iters);
      },
      1);

  size_t best = 0;
  for (size_t r = 1; r < results.size(); ++r) {
    if (results[r].value < results[best].value) best = r;
  }
  ReResult res;
  res.best_restart = static_cast<int>(best);
  res.certificate = Eigen::VectorXd::Zero(m);
  for (size_t c = 0; c < in.size(); ++c) {
    res.certificate(in[c]) = results[best].u(static_cast<Eigen::Index>(c));
  }
  for (size_t c = 0; c < out_idx.size(); ++c) {
    res.certificate(out_idx[c]) = results[best].w(static_cast<Eigen::Index>(c));
  }
  res.value = re_objective(sigma, cone.s, res.certificate);
  return res;
}

GammaSpectral gamma_vs_spectral(const StandardizedDesign& design, Subset s, int k,
                                FitCache* cache, int max_enum) {
  GammaSpectral out;
  const gamma::RatioResult ratio = gamma::submodularity_ratio(
      design, {s, k, gamma::CardinalityMode::kExactlyK}, cache, max_enum);
  out.gamma_sr = ratio.gamma_sr;
  out.lambda_order = s.size() + k;
  const SparseEigen eig =
      sparse_min_eigenvalue(design.correlation(), out.lambda_order, max_enum);
  out.lambda_min = eig.value;
  out.support = eig.support;
  out.holds = out.gamma_sr >= out.lambda_min - 1e-9;
  return out;
}

}  // namespace subsel::spectral
