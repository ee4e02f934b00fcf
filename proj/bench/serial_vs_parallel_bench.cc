/*
 * Copyright 2026 The dpforensics Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Serial reference vs OpenMP paths of the hot loops.

#include <cmath>
#include <vector>

#include "benchmark/benchmark.h"
#include "dpforensics/attacks.h"
#include "dpforensics/experiments.h"
#include "dpforensics/gaussian.h"
#include "dpforensics/parallel.h"
#include "dpforensics/posterior.h"
#include "dpforensics/rng.h"
#include "dpforensics/tradeoff.h"

namespace dpforensics {
namespace {

Execution ExecOf(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::kSerial : Execution::kParallel;
}

void BM_CountInBand(benchmark::State& state) {
  ConfusionMatrix c;
  c.tn = 497;
  c.fp = 2;
  c.fn = 113;
  c.tp = 388;
  const PosteriorSample sample = DrawPosterior(c, 100000, 1);
  const TradeoffCurve curve{Family::kLaplace, 1.5, 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(CountInBand(sample, curve, ExecOf(state)));
  }
}
BENCHMARK(BM_CountInBand)->Arg(0)->Arg(1)->ArgName("parallel");

void BM_ThetaStar(benchmark::State& state) {
  ConfusionMatrix c;
  c.tn = 499;
  c.fp = 0;
  c.fn = 147;
  c.tp = 354;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ThetaStar(Family::kGaussian, c, 0.05, 100000, 1,
                                       1e-5, ExecOf(state)));
  }
}
BENCHMARK(BM_ThetaStar)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(
    benchmark::kMillisecond);

void BM_PhiLapRates(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(PhiLapRates(1.0, 1.0, 20000, 1, ExecOf(state)));
  }
}
BENCHMARK(BM_PhiLapRates)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(
    benchmark::kMillisecond);

void BM_PhiGaussRates(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(PhiGaussRates(1.0 / std::sqrt(1000.0), 1.0, 80,
                                           20000, 1, ExecOf(state)));
  }
}
BENCHMARK(BM_PhiGaussRates)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(
    benchmark::kMillisecond);

// Centre-out scan against the full row-major window scan.
void BM_PhiGaussScan(benchmark::State& state) {
  std::vector<float> y;
  for (int t = 0; t < 200; ++t) {
    RngStream s = RngStream::Derive(2, t);
    const std::vector<float> v = SampleGaussianVector(s, {0.0, 1.0, 2});
    y.insert(y.end(), v.begin(), v.end());
  }
  const bool spiral = state.range(0) == 1;
  for (auto _ : state) {
    int flagged = 0;
    for (size_t i = 0; i < y.size(); i += 2) {
      flagged += spiral ? PhiGauss(y[i], y[i + 1], 0.0, 1.0)
                        : PhiGaussReference(y[i], y[i + 1], 0.0, 1.0);
    }
    benchmark::DoNotOptimize(flagged);
  }
}
BENCHMARK(BM_PhiGaussScan)->Arg(0)->Arg(1)->ArgName("spiral")->Unit(
    benchmark::kMillisecond);

}  // namespace
}  // namespace dpforensics

BENCHMARK_MAIN();
