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

#include "dpforensics/posterior.h"

#include <cmath>
#include <cstdint>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpforensics {
namespace {

constexpr double kThetaTolerance = 1e-6;
constexpr int64_t kMinMcSamples = 10000;

double SampleStandardNormal(RngStream& stream) {
  const double u1 = 1.0 - stream.Uniform53();  // (0, 1]
  const double u2 = stream.Uniform53();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace

absl::Status ConfusionMatrix::Validate() const {
  if (tn < 0 || fp < 0 || fn < 0 || tp < 0) {
    return absl::InvalidArgumentError("negative confusion count");
  }
  if (tn + fp < 1 || fn + tp < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("both classes must be observed (tn=", tn, " fp=", fp,
                     " fn=", fn, " tp=", tp, ")"));
  }
  return absl::OkStatus();
}

void ConfusionMatrix::Add(int secret_bit, int prediction) {
  if (secret_bit == 0) {
    (prediction == 0 ? tn : fp) += 1;
  } else {
    (prediction == 0 ? fn : tp) += 1;
  }
}

double ConfusionMatrix::fpr() const {
  return tn + fp == 0 ? 0.0 : static_cast<double>(fp) / (tn + fp);
}

double ConfusionMatrix::tpr() const {
  return fn + tp == 0 ? 0.0 : static_cast<double>(tp) / (fn + tp);
}

double ConfusionMatrix::accuracy() const {
  return total() == 0 ? 0.0 : static_cast<double>(tn + tp) / total();
}

double SampleGamma(double shape, RngStream& stream) {
  if (shape < 1.0) {
    const double u = 1.0 - stream.Uniform53();
    return SampleGamma(shape + 1.0, stream) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = SampleStandardNormal(stream);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = 1.0 - stream.Uniform53();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double SampleBeta(double a, double b, RngStream& stream) {
  const double x = SampleGamma(a, stream);
  const double y = SampleGamma(b, stream);
  const double s = x + y;
  return s > 0.0 ? x / s : 0.5;
}

PosteriorSample DrawPosterior(const ConfusionMatrix& confusion,
                              int64_t mc_samples, uint64_t mc_seed) {
  PosteriorSample out;
  out.alpha.resize(mc_samples);
  out.beta.resize(mc_samples);
  RngStream stream(mc_seed);
  const double fp = confusion.fp + 0.5, tn = confusion.tn + 0.5;
  const double fn = confusion.fn + 0.5, tp = confusion.tp + 0.5;
  for (int64_t i = 0; i < mc_samples; ++i) {
    out.alpha[i] = SampleBeta(fp, tn, stream);
    out.beta[i] = SampleBeta(fn, tp, stream);
  }
  return out;
}

int64_t CountInBand(const PosteriorSample& sample, const TradeoffCurve& curve,
                    Execution exec) {
  const double* alpha = sample.alpha.data();
  const double* beta = sample.beta.data();
  return CountTrials(static_cast<int64_t>(sample.size()), exec,
                     [&](int64_t i) {
                       const double a = alpha[i];
                       const double b = beta[i];
                       return curve(a) <= b && b <= 1.0 - curve(1.0 - a);
                     });
}

double PosteriorPF(const PosteriorSample& sample, const TradeoffCurve& curve,
                   Execution exec) {
  if (sample.size() == 0) return 0.0;
  return static_cast<double>(CountInBand(sample, curve, exec)) /
         static_cast<double>(sample.size());
}

absl::StatusOr<double> PosteriorPF(const ConfusionMatrix& confusion,
                                   const TradeoffCurve& curve,
                                   int64_t mc_samples, uint64_t mc_seed) {
  if (absl::Status s = confusion.Validate(); !s.ok()) return s;
  if (mc_samples < kMinMcSamples) {
    return absl::InvalidArgumentError(
        absl::StrCat("mc_samples must be >= ", kMinMcSamples));
  }
  return PosteriorPF(DrawPosterior(confusion, mc_samples, mc_seed), curve);
}

ThetaStarResult ThetaStarFromSample(Family family,
                                    const PosteriorSample& sample,
                                    double gamma, double delta,
                                    Execution exec) {
  auto rejected = [&](double theta) {
    return PosteriorPF(sample, TradeoffCurve{family, theta, delta}, exec) <=
           gamma;
  };
  const double theta_max = ThetaMax(family);
  if (!rejected(0.0)) return {0.0, false};
  if (rejected(theta_max)) return {theta_max, true};
  double lo = 0.0;
  double hi = theta_max;
  while (hi - lo > kThetaTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (rejected(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, false};
}

absl::StatusOr<ThetaStarResult> ThetaStar(Family family,
                                          const ConfusionMatrix& confusion,
                                          double gamma, int64_t mc_samples,
                                          uint64_t mc_seed, double delta,
                                          Execution exec) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    return absl::InvalidArgumentError("gamma must lie in (0, 1)");
  }
  if (absl::Status s = confusion.Validate(); !s.ok()) return s;
  if (mc_samples < kMinMcSamples) {
    return absl::InvalidArgumentError(
        absl::StrCat("mc_samples must be >= ", kMinMcSamples));
  }
  return ThetaStarFromSample(family,
                             DrawPosterior(confusion, mc_samples, mc_seed),
                             gamma, delta, exec);
}

}  // namespace dpforensics
