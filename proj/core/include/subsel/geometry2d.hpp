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

// Every feasible two-feature regression problem, up to sign symmetries,
// is a triangle with vertices at the origin and the projections Yhat_1,
// Yhat_2 of the response onto each feature. It is fixed by
//   theta   - angle between X1 and X2 (r12 = cos theta),
//   tau     - interior angle at Yhat_1,
//   r2_full - joint R^2, which sets the side b = |Yhat_1 Yhat_2|.
// Grids over (theta, v = tau + theta / 2) carry the closed-form gamma
// diagnostics of each problem.

#ifndef SUBSEL_GEOMETRY2D_HPP_
#define SUBSEL_GEOMETRY2D_HPP_

#include <array>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "subsel/gamma.hpp"

namespace subsel::geometry2d {

struct TrianglePoint {
  double theta = 0.0;
  double tau = 0.0;
  double r2_full = 0.0;
  double r12 = 0.0;
  double r_y1 = 0.0;
  double r_y2 = 0.0;
  double b = 0.0;
};

/// Solves the triangle by the law of sines. Throws InfeasibleAngles unless
/// 0 < theta < pi, 0 < tau < pi - theta and 0 < r2_full <= 1.
TrianglePoint triangle_solve(double theta, double tau, double r2_full);

/// Pair diagnostics from the angles alone. With r_y1 = sqrt(R2) sin(theta +
/// tau) and r_y2 = sqrt(R2) sin(tau), every ratio is free of R2:
///   gamma1 = sin^2(theta + tau) / cos^2(tau)
///   gamma2 = sin^2(tau) / cos^2(theta + tau)
///   gamma_sr = sin^2(theta + tau) + sin^2(tau)
/// Agrees with gamma::gamma_pair on the same point up to rounding.
gamma::PairDiagnostics angle_diagnostics(const TrianglePoint& point);

/// 2 / gamma_sr - 1: the largest possible ratio of summed squared joint
/// t-statistics to summed squared marginal ones.
double t_ratio_bound(double gamma_sr);

struct GridCell {
  int theta_index = 0;  // i in theta = pi i / theta_steps
  int v_index = 0;      // j in v = pi j / v_steps
  double v = 0.0;       // tau + theta / 2
  TrianglePoint point;
  gamma::PairDiagnostics diagnostics;
  double t_ratio_bound = 0.0;
};

/// Evaluates theta = pi i / theta_steps (i = 1..theta_steps-1) crossed with
/// v = pi j / v_steps (j = 1..v_steps-1), keeping cells strictly inside the
/// feasible band theta / 2 < v < pi - theta / 2. Row-major by theta, then v.
std::vector<GridCell> grid_evaluate(int theta_steps, int v_steps,
                                    double r2_full);

/// Column names of the grid CSV, in order.
std::span<const std::string_view> grid_columns();

/// Value of a named grid column; angle columns are in units of pi.
double grid_value(const GridCell& cell, std::string_view column);

/// Header plus one row per cell, 12 significant digits, LF endings.
void write_grid_csv(std::ostream& out, std::span<const GridCell> cells);

/// Level-set thresholds used to band each diagnostic's heatmap.
std::vector<double> default_levels(std::string_view column);

/// Cell heatmap of one column, colored by which level band the value falls in.
void write_svg_heatmap(std::ostream& out, std::span<const GridCell> cells,
                       std::string_view column, std::span<const double> levels);

struct TRatioResult {
  /// Squared t-statistics on one shared noise scale:
  /// (t_j1^2 + t_j2^2) / (t_m1^2 + t_m2^2).
  double lhs = 0.0;
  /// The same ratio with each fit using its own residual variance.
  double lhs_separate = 0.0;
  double bound = 0.0;
  bool holds = false;
  std::array<double, 2> t_marginal{};  // joint-model noise scale
  std::array<double, 2> t_joint{};
  std::array<double, 2> t_marginal_own{};  // each marginal fit's own scale
};

/// Realizes the point as an exact n-row sample, fits both marginal models
/// and the joint model, and compares the t-statistic ratio to the bound.
TRatioResult t_ratio_empirical(const TrianglePoint& point, int n);

struct TExtremes {
  double single = 0.0;  // all joint signal on one feature
  double split = 0.0;   // joint signal split evenly
};

/// Largest joint |t| reachable when both marginal |t| equal `marginal_t`.
TExtremes t_ratio_extremes(double gamma_sr, double marginal_t);

}  // namespace subsel::geometry2d

#endif  // SUBSEL_GEOMETRY2D_HPP_
