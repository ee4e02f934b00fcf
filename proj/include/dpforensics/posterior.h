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

// Beta posteriors over an attack's error rates and the Bayesian rejection
// test for a trade-off curve.

#ifndef DPFORENSICS_POSTERIOR_H_
#define DPFORENSICS_POSTERIOR_H_

#include <cstdint>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpforensics/parallel.h"
#include "dpforensics/rng.h"
#include "dpforensics/tradeoff.h"

namespace dpforensics {

// Label 0 is the negative class (input x0), 1 the positive class (x1).
struct ConfusionMatrix {
  int64_t tn = 0;
  int64_t fp = 0;
  int64_t fn = 0;
  int64_t tp = 0;

  // Both classes observed at least once, counts non-negative.
  absl::Status Validate() const;
  void Add(int secret_bit, int prediction);

  int64_t total() const { return tn + fp + fn + tp; }
  double fpr() const;
  double tpr() const;
  double fnr() const { return 1.0 - tpr(); }
  double accuracy() const;
  double balanced_accuracy() const { return 0.5 * (1.0 - fpr() + tpr()); }

  friend bool operator==(const ConfusionMatrix&,
                         const ConfusionMatrix&) = default;
};

// Marsaglia-Tsang for shape >= 1; shape < 1 boosted as G(a + 1) U^{1/a}.
// Normals come from Box-Muller on Uniform53.
double SampleGamma(double shape, RngStream& stream);
double SampleBeta(double a, double b, RngStream& stream);

// Draws from alpha ~ Beta(1/2 + FP, 1/2 + TN) and beta ~ Beta(1/2 + FN,
// 1/2 + TP). Reused across every curve evaluated for one audit.
struct PosteriorSample {
  std::vector<double> alpha;
  std::vector<double> beta;

  size_t size() const { return alpha.size(); }
};

PosteriorSample DrawPosterior(const ConfusionMatrix& confusion,
                              int64_t mc_samples, uint64_t mc_seed);

// Number of draws with f(alpha) <= beta <= 1 - f(1 - alpha).
int64_t CountInBand(const PosteriorSample& sample, const TradeoffCurve& curve,
                    Execution exec = Execution::kParallel);

// p(f): posterior mass inside the band of f.
double PosteriorPF(const PosteriorSample& sample, const TradeoffCurve& curve,
                   Execution exec = Execution::kParallel);
absl::StatusOr<double> PosteriorPF(const ConfusionMatrix& confusion,
                                   const TradeoffCurve& curve,
                                   int64_t mc_samples, uint64_t mc_seed);

struct ThetaStarResult {
  double theta_star = 0.0;
  // theta_star hit ThetaMax(family).
  bool saturated = false;
};

// Largest theta in [0, ThetaMax(family)] whose curve is rejected
// (p(f_theta) <= gamma), by bisection to 1e-6 on one shared posterior sample.
// 0 when not even theta = 0 is rejected. `delta` parameterizes the
// kEpsDelta family.
absl::StatusOr<ThetaStarResult> ThetaStar(
    Family family, const ConfusionMatrix& confusion, double gamma,
    int64_t mc_samples, uint64_t mc_seed, double delta = 0.0,
    Execution exec = Execution::kParallel);

// Same search on a prepared sample.
ThetaStarResult ThetaStarFromSample(Family family,
                                    const PosteriorSample& sample,
                                    double gamma, double delta,
                                    Execution exec);

}  // namespace dpforensics

#endif  // DPFORENSICS_POSTERIOR_H_
