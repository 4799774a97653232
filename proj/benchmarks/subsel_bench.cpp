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

#include <benchmark/benchmark.h>

#include "subsel/datasets.hpp"
#include "subsel/geometry2d.hpp"
#include "subsel/regress.hpp"
#include "subsel/selection.hpp"
#include "subsel/setfun.hpp"

namespace {

using namespace subsel;

StandardizedDesign design(int m) {
  Eigen::MatrixXd corr = Eigen::MatrixXd::Constant(m, m, 0.3);
  corr.diagonal().setOnes();
  Eigen::VectorXd beta = Eigen::VectorXd::LinSpaced(m, 1.0, -1.0);
  return regress::standardize(datasets::random_gaussian(4 * m + 10, m, corr, beta, 1.0, 1));
}

void BM_R2Table(benchmark::State& state) {
  const auto d = design(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(regress::r2_table(d));
}
BENCHMARK(BM_R2Table)->DenseRange(6, 14, 4)->Unit(benchmark::kMillisecond);

void BM_CheckSubmodular(benchmark::State& state) {
  const auto d = design(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    FitCache cache;
    benchmark::DoNotOptimize(
        setfun::check_submodular(d, setfun::CheckMode::kSecondOrder, {}, &cache));
  }
}
BENCHMARK(BM_CheckSubmodular)->DenseRange(6, 12, 3)->Unit(benchmark::kMillisecond);

void BM_Grid(benchmark::State& state) {
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(geometry2d::grid_evaluate(steps, steps, 0.5));
}
BENCHMARK(BM_Grid)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_BestSubset(benchmark::State& state) {
  const auto d = design(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(selection::best_subset(d, 4));
}
BENCHMARK(BM_BestSubset)->DenseRange(8, 16, 4)->Unit(benchmark::kMillisecond);

void BM_Stepwise(benchmark::State& state) {
  const auto d = design(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(selection::forward_stepwise(d, 8));
}
BENCHMARK(BM_Stepwise)->Arg(20)->Arg(60)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
