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

#include "dpforensics/gaussian.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpforensics {

absl::StatusOr<GaussParams> GaussParams::Create(double mu, double sigma,
                                                int dim) {
  if (!std::isfinite(mu)) {
    return absl::InvalidArgumentError("Gaussian mean must be finite");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    return absl::InvalidArgumentError(
        absl::StrCat("sigma must be finite and positive, got ", sigma));
  }
  if (dim < 1) {
    return absl::InvalidArgumentError(absl::StrCat("dim must be >= 1, got ", dim));
  }
  return GaussParams{mu, sigma, dim};
}

absl::StatusOr<Float32Pair> MarsagliaPair(int64_t v1, int64_t v2, double mu,
                                          double sigma) {
  constexpr int64_t kLo = INT32_MIN;
  constexpr int64_t kHi = INT32_MAX;
  if (v1 < kLo || v1 > kHi || v2 < kLo || v2 > kHi) {
    return absl::FailedPreconditionError(
        "PreconditionViolation: integers outside the signed 32-bit range");
  }
  if (!MarsagliaAccepts(v1, v2)) {
    return absl::FailedPreconditionError(absl::StrCat(
        "PreconditionViolation: need 0 < v1^2 + v2^2 <= 2^62 - 1, got v1=", v1,
        " v2=", v2));
  }
  return MarsagliaPairUnchecked(v1, v2, mu, sigma);
}

void DrawMarsagliaIntegers(RngStream& stream, int32_t& v1, int32_t& v2,
                           uint64_t* proposals) {
  for (;;) {
    v1 = stream.SignedInt31();
    v2 = stream.SignedInt31();
    if (proposals != nullptr) ++*proposals;
    if (MarsagliaAccepts(v1, v2)) return;
  }
}

std::vector<float> SampleGaussianVector(RngStream& stream,
                                        const GaussParams& params) {
  std::vector<float> out;
  out.reserve(params.dim + 1);
  while (static_cast<int>(out.size()) < params.dim) {
    int32_t v1, v2;
    DrawMarsagliaIntegers(stream, v1, v2);
    const Float32Pair p =
        MarsagliaPairUnchecked(v1, v2, params.mu, params.sigma);
    out.push_back(p.y1);
    out.push_back(p.y2);
  }
  out.resize(params.dim);
  return out;
}

std::vector<double> ClipToUnitBall(std::span<const double> x) {
  double sq = 0.0;
  for (double v : x) sq += v * v;
  const double scale = std::max(1.0, std::sqrt(sq));
  std::vector<double> out(x.begin(), x.end());
  if (scale > 1.0) {
    for (double& v : out) v /= scale;
  }
  return out;
}

absl::StatusOr<std::vector<float>> GaussianMechanism(std::span<const double> x,
                                                     double sigma,
                                                     RngStream& stream) {
  if (x.empty()) {
    return absl::InvalidArgumentError("Gaussian mechanism needs d >= 1");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    return absl::InvalidArgumentError("sigma must be finite and positive");
  }
  for (double v : x) {
    if (!std::isfinite(v)) {
      return absl::InvalidArgumentError("NonFiniteInput");
    }
  }
  const std::vector<double> clipped = ClipToUnitBall(x);
  const size_t d = clipped.size();
  std::vector<float> out(d);
  for (size_t i = 0; i < d; i += 2) {
    int32_t v1, v2;
    DrawMarsagliaIntegers(stream, v1, v2);
    double z1, z2;
    MarsagliaStandardUnchecked(v1, v2, z1, z2);
    out[i] = static_cast<float>(clipped[i] + sigma * z1);
    if (i + 1 < d) out[i + 1] = static_cast<float>(clipped[i + 1] + sigma * z2);
  }
  return out;
}

}  // namespace dpforensics
