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

// Trade-off curves of the (eps, delta), Gaussian-shift and Laplace-shift
// families, and the conversions between a curve and (eps, delta)-DP.

#ifndef DPFORENSICS_TRADEOFF_H_
#define DPFORENSICS_TRADEOFF_H_

#include <functional>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace dpforensics {

enum class Family { kEpsDelta, kGaussian, kLaplace };

absl::StatusOr<Family> ParseFamily(absl::string_view name);
absl::string_view FamilyName(Family family);

// Upper end of the theta search range: 32 for the shift families, 64 for
// (eps, delta).
double ThetaMax(Family family);

// max{0, 1 - delta - e^eps alpha, e^-eps (1 - delta - alpha)}.
double FEpsDelta(double eps, double delta, double alpha);

// Phi(Phi^{-1}(1 - alpha) - mu), evaluated as Phi(-Phi^{-1}(alpha) - mu).
double FGauss(double mu, double alpha);

// Likelihood-ratio test between Lap(0, 1) and Lap(mu, 1):
//   1 - e^mu alpha        for alpha < e^-mu / 2
//   e^-mu / (4 alpha)     for e^-mu / 2 <= alpha <= 1/2
//   e^-mu (1 - alpha)     for alpha > 1/2
double FLaplace(double mu, double alpha);

// One family member. `delta` is used by kEpsDelta only.
struct TradeoffCurve {
  Family family = Family::kEpsDelta;
  double theta = 0.0;
  double delta = 0.0;

  double operator()(double alpha) const;
};

using CurveFn = std::function<double(double)>;

// sup_alpha 1 - alpha e^eps - f(alpha), clamped to [0, 1].
//
// The objective is concave in alpha, hence unimodal in t = ln(alpha). A coarse
// grid over t brackets the maximum and a ternary search refines it; the
// endpoints alpha = 0 and alpha = 1 are checked separately.
double DeltaOfF(const CurveFn& f, double eps);
double DeltaOfF(const TradeoffCurve& curve, double eps);

// Smallest eps in [0, 64] with DeltaOfF(f, eps) <= delta, by bisection to
// 1e-6. OUT_OF_RANGE ("Unbounded") when even eps = 64 is not enough.
absl::StatusOr<double> EpsOfF(const CurveFn& f, double delta);
absl::StatusOr<double> EpsOfF(const TradeoffCurve& curve, double delta);

}  // namespace dpforensics

#endif  // DPFORENSICS_TRADEOFF_H_
