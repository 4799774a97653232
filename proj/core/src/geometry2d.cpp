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

#include "subsel/geometry2d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "parallel.hpp"
#include "subsel/error.hpp"
#include "subsel/regress.hpp"

namespace subsel::geometry2d {
namespace {

constexpr double kPi = std::numbers::pi;

// Cells closer than this to the feasibility boundary are degenerate
// (one marginal correlation vanishes) and are left out of grids.
constexpr double kBoundaryMargin = 1e-12;

constexpr std::string_view kColumns[] = {
    "theta",  "v",        "tau",       "r12",      "r_y1",
    "r_y2",   "b",        "gamma1",    "gamma2",   "gamma_s2",
    "sum_bound", "gamma_sr", "t_ratio_bound"};

std::string format12(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

}  // namespace

TrianglePoint triangle_solve(double theta, double tau, double r2_full) {
  if (!(theta > 0.0 && theta < kPi)) {
    throw Error(ErrorKind::kInfeasibleAngles, "theta must lie in (0, pi)");
  }
  if (!(tau > 0.0 && tau < kPi - theta)) {
    throw Error(ErrorKind::kInfeasibleAngles, "tau must lie in (0, pi - theta)");
  }
  if (!(r2_full > 0.0 && r2_full <= 1.0)) {
    throw Error(ErrorKind::kInfeasibleAngles, "r2_full must lie in (0, 1]");
  }
  TrianglePoint p;
  p.theta = theta;
  p.tau = tau;
  p.r2_full = r2_full;
  p.r12 = std::cos(theta);
  const double sin_theta = std::sin(theta);
  p.b = std::sqrt(sin_theta * sin_theta * r2_full);
  // Angle at the origin is theta (opposite b), at Yhat_1 is tau (opposite
  // r_y2) and at Yhat_2 is pi - theta - tau (opposite r_y1).
  p.r_y2 = p.b * std::sin(tau) / sin_theta;
  p.r_y1 = p.b * std::sin(theta + tau) / sin_theta;
  return p;
}

gamma::PairDiagnostics angle_diagnostics(const TrianglePoint& point) {
  auto ratio = [](double num, double den) {
    if (den <= 0.0) return num <= 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    return num / den;
  };
  const double s1 = std::sin(point.theta + point.tau);
  const double s2 = std::sin(point.tau);
  const double c1 = std::cos(point.theta + point.tau);
  const double c2 = std::cos(point.tau);
  gamma::PairDiagnostics out;
  out.r_y1 = point.r_y1;
  out.r_y2 = point.r_y2;
  out.r12 = point.r12;
  out.joint_r2 = point.r2_full;
  out.gamma1 = ratio(s1 * s1, c2 * c2);
  out.gamma2 = ratio(s2 * s2, c1 * c1);
  out.gamma_s2_pair = std::min(out.gamma1, out.gamma2);
  out.gamma_sr_pair = s1 * s1 + s2 * s2;
  out.sum_bound = ratio(out.gamma_sr_pair, 2.0 - out.gamma_sr_pair);
  return out;
}

double t_ratio_bound(double gamma_sr) { return 2.0 / gamma_sr - 1.0; }

std::vector<GridCell> grid_evaluate(int theta_steps, int v_steps,
                                    double r2_full) {
  if (theta_steps < 2 || v_steps < 2) {
    throw Error(ErrorKind::kInvalidArgument, "grid steps must be >= 2");
  }
  if (!(r2_full > 0.0 && r2_full <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "r2_full must lie in (0, 1]");
  }
  struct Slot {
    int i, j;
    double theta, v;
  };
  std::vector<Slot> slots;
  for (int i = 1; i < theta_steps; ++i) {
    const double theta = kPi * i / theta_steps;
    for (int j = 1; j < v_steps; ++j) {
      const double v = kPi * j / v_steps;
      const double tau = v - theta / 2.0;
      if (tau > kBoundaryMargin && tau < kPi - theta - kBoundaryMargin) {
        slots.push_back({i, j, theta, v});
      }
    }
  }
  std::vector<GridCell> cells(slots.size());
  internal::parallel_for(slots.size(), [&](std::uint64_t c) {
    const Slot& s = slots[c];
    GridCell& cell = cells[c];
    cell.theta_index = s.i;
    cell.v_index = s.j;
    cell.v = s.v;
    cell.point = triangle_solve(s.theta, s.v - s.theta / 2.0, r2_full);
    cell.diagnostics = angle_diagnostics(cell.point);
    cell.t_ratio_bound = t_ratio_bound(cell.diagnostics.gamma_sr_pair);
  });
  return cells;
}

std::span<const std::string_view> grid_columns() { return kColumns; }

double grid_value(const GridCell& cell, std::string_view column) {
  const auto& p = cell.point;
  const auto& d = cell.diagnostics;
  if (column == "theta") return p.theta / kPi;
  if (column == "v") return cell.v / kPi;
  if (column == "tau") return p.tau / kPi;
  if (column == "r12") return p.r12;
  if (column == "r_y1") return p.r_y1;
  if (column == "r_y2") return p.r_y2;
  if (column == "b") return p.b;
  if (column == "gamma1") return d.gamma1;
  if (column == "gamma2") return d.gamma2;
  if (column == "gamma_s2") return d.gamma_s2_pair;
  if (column == "sum_bound") return d.sum_bound;
  if (column == "gamma_sr") return d.gamma_sr_pair;
  if (column == "t_ratio_bound") return cell.t_ratio_bound;
  throw Error(ErrorKind::kInvalidArgument,
              "unknown grid column '" + std::string(column) + "'");
}

void write_grid_csv(std::ostream& out, std::span<const GridCell> cells) {
  bool first = true;
  for (auto name : kColumns) {
    if (!first) out << ',';
    out << name;
    first = false;
  }
  out << '\n';
  for (const auto& cell : cells) {
    first = true;
    for (auto name : kColumns) {
      if (!first) out << ',';
      out << format12(grid_value(cell, name));
      first = false;
    }
    out << '\n';
  }
}

std::vector<double> default_levels(std::string_view column) {
  std::vector<double> levels;
  auto steps = [&](double lo, double hi, double step) {
    for (double x = lo; x <= hi + 1e-9; x += step) levels.push_back(x);
  };
  if (column == "gamma1" || column == "gamma2" || column == "gamma_s2" ||
      column == "sum_bound") {
    steps(0.2, 1.0, 0.2);
  } else if (column == "gamma_sr") {
    steps(0.2, 2.0, 0.2);
  } else if (column == "t_ratio_bound") {
    steps(0.5, 10.0, 0.5);
  } else {
    steps(0.1, 0.9, 0.1);
  }
  return levels;
}

void write_svg_heatmap(std::ostream& out, std::span<const GridCell> cells,
                       std::string_view column, std::span<const double> levels) {
  constexpr int kCell = 6;
  int max_i = 1;
  int max_j = 1;
  for (const auto& c : cells) {
    max_i = std::max(max_i, c.theta_index);
    max_j = std::max(max_j, c.v_index);
  }
  const int width = max_i * kCell;
  const int height = max_j * kCell;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n";
  out << "<title>" << column << "</title>\n";
  const double bands = static_cast<double>(levels.size());
  for (const auto& c : cells) {
    const double value = grid_value(c, column);
    const auto band = std::upper_bound(levels.begin(), levels.end(), value) -
                      levels.begin();
    const double t = bands > 0 ? static_cast<double>(band) / bands : 0.0;
    // Linear ramp from dark blue to dark red.
    const int r = static_cast<int>(std::lround(49 + t * (165 - 49)));
    const int g = static_cast<int>(std::lround(54 + t * (0 - 54)));
    const int b = static_cast<int>(std::lround(149 + t * (38 - 149)));
    const int x = (c.theta_index - 1) * kCell;
    const int y = (max_j - c.v_index) * kCell;
    out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << kCell
        << "\" height=\"" << kCell << "\" fill=\"rgb(" << r << ',' << g << ','
        << b << ")\"><title>" << format12(value) << "</title></rect>\n";
  }
  out << "</svg>\n";
}

TRatioResult t_ratio_empirical(const TrianglePoint& point, int n) {
  if (n < 4) throw Error(ErrorKind::kTooFewRows, "t-ratio needs n >= 4");
  Eigen::Matrix3d gram;
  gram << 1.0, point.r_y1, point.r_y2,
          point.r_y1, 1.0, point.r12,
          point.r_y2, point.r12, 1.0;
  const StandardizedDesign design = regress::gram_factory(gram, n);

  const regress::LsFit m1 = regress::ls_fit(design, Subset{0});
  const regress::LsFit m2 = regress::ls_fit(design, Subset{1});
  const regress::LsFit joint = regress::ls_fit(design, Subset{0, 1});

  // t-statistics with unit noise scale; the shared scale cancels in ratios.
  auto unscaled = [](const regress::LsFit& f, Eigen::Index c) {
    return f.coefficients(c) / std::sqrt(f.inverse_gram_diagonal(c));
  };
  const std::array<double, 2> um{unscaled(m1, 0), unscaled(m2, 0)};
  const std::array<double, 2> uj{unscaled(joint, 0), unscaled(joint, 1)};

  TRatioResult out;
  out.lhs = (uj[0] * uj[0] + uj[1] * uj[1]) / (um[0] * um[0] + um[1] * um[1]);
  out.bound = t_ratio_bound(
      gamma::gamma_pair(point.r_y1, point.r_y2, point.r12).gamma_sr_pair);
  out.holds = out.lhs <= out.bound + 1e-9;

  const double sigma = std::sqrt(joint.sigma2);
  for (int c = 0; c < 2; ++c) {
    out.t_marginal[static_cast<size_t>(c)] =
        sigma > 0.0 ? um[static_cast<size_t>(c)] / sigma
                    : std::numeric_limits<double>::infinity();
    out.t_joint[static_cast<size_t>(c)] = joint.t_statistics(c);
  }
  out.t_marginal_own = {m1.t_statistics(0), m2.t_statistics(0)};
  const double jt = joint.t_statistics(0) * joint.t_statistics(0) +
                    joint.t_statistics(1) * joint.t_statistics(1);
  const double mt = out.t_marginal_own[0] * out.t_marginal_own[0] +
                    out.t_marginal_own[1] * out.t_marginal_own[1];
  out.lhs_separate = jt / mt;
  return out;
}

TExtremes t_ratio_extremes(double gamma_sr, double marginal_t) {
  const double joint_sum =
      t_ratio_bound(gamma_sr) * 2.0 * marginal_t * marginal_t;
  return {std::sqrt(joint_sum), std::sqrt(joint_sum / 2.0)};
}

}  // namespace subsel::geometry2d
