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

#include "dpforensics/tradeoff.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"
#include "dpforensics/normal.h"

namespace dpforensics {
namespace {

constexpr double kEpsUpper = 64.0;
constexpr double kEpsTolerance = 1e-6;
constexpr double kDeltaSlack = 1e-12;
constexpr double kLogAlphaMin = -700.0;
constexpr int kGridPoints = 1401;
constexpr int kTernaryIterations = 200;

}  // namespace

absl::StatusOr<Family> ParseFamily(absl::string_view name) {
  if (name == "eps_delta") return Family::kEpsDelta;
  if (name == "gaussian") return Family::kGaussian;
  if (name == "laplace") return Family::kLaplace;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown trade-off family '", name, "'"));
}

absl::string_view FamilyName(Family family) {
  switch (family) {
    case Family::kEpsDelta:
      return "eps_delta";
    case Family::kGaussian:
      return "gaussian";
    case Family::kLaplace:
      return "laplace";
  }
  return "unknown";
}

double ThetaMax(Family family) {
  return family == Family::kEpsDelta ? 64.0 : 32.0;
}

double FEpsDelta(double eps, double delta, double alpha) {
  const double a = 1.0 - delta - std::exp(eps) * alpha;
  const double b = std::exp(-eps) * (1.0 - delta - alpha);
  return std::max({0.0, a, b});
}

double FGauss(double mu, double alpha) {
  if (alpha <= 0.0) return 1.0;
  if (alpha >= 1.0) return 0.0;
  return NormalCdf(-NormalQuantile(alpha) - mu);
}

double FLaplace(double mu, double alpha) {
  if (alpha <= 0.0) return 1.0;
  if (alpha >= 1.0) return 0.0;
  const double e = std::exp(-mu);
  if (alpha < e / 2.0) return 1.0 - alpha / e;
  if (alpha <= 0.5) return e / (4.0 * alpha);
  return e * (1.0 - alpha);
}

double TradeoffCurve::operator()(double alpha) const {
  switch (family) {
    case Family::kEpsDelta:
      return FEpsDelta(theta, delta, alpha);
    case Family::kGaussian:
      return FGauss(theta, alpha);
    case Family::kLaplace:
      return FLaplace(theta, alpha);
  }
  return 0.0;
}

double DeltaOfF(const CurveFn& f, double eps) {
  const double scale = std::exp(eps);
  auto g = [&](double t) { return 1.0 - std::exp(t) * scale - f(std::exp(t)); };

  double best = std::max(1.0 - f(0.0), 1.0 - scale - f(1.0));
  const double step = -kLogAlphaMin / (kGridPoints - 1);
  int arg = 0;
  double grid_best = g(kLogAlphaMin);
  for (int i = 1; i < kGridPoints; ++i) {
    const double v = g(kLogAlphaMin + i * step);
    if (v > grid_best) {
      grid_best = v;
      arg = i;
    }
  }
  double lo = kLogAlphaMin + std::max(0, arg - 1) * step;
  double hi = kLogAlphaMin + std::min(kGridPoints - 1, arg + 1) * step;
  for (int it = 0; it < kTernaryIterations && hi - lo > 1e-13; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (g(m1) < g(m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  best = std::max({best, grid_best, g(0.5 * (lo + hi))});
  return std::clamp(best, 0.0, 1.0);
}

double DeltaOfF(const TradeoffCurve& curve, double eps) {
  return DeltaOfF(CurveFn(curve), eps);
}

absl::StatusOr<double> EpsOfF(const CurveFn& f, double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in [0, 1), got ", delta));
  }
  if (DeltaOfF(f, 0.0) <= delta + kDeltaSlack) return 0.0;
  if (DeltaOfF(f, kEpsUpper) > delta + kDeltaSlack) {
    return absl::OutOfRangeError(absl::StrCat(
        "Unbounded: curve needs eps > ", kEpsUpper, " at delta=", delta));
  }
  double lo = 0.0;
  double hi = kEpsUpper;
  while (hi - lo > kEpsTolerance / 4.0) {
    const double mid = 0.5 * (lo + hi);
    if (DeltaOfF(f, mid) <= delta + kDeltaSlack) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

absl::StatusOr<double> EpsOfF(const TradeoffCurve& curve, double delta) {
  return EpsOfF(CurveFn(curve), delta);
}

}  // namespace dpforensics
