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

// Marsaglia polar sampler with the binary32 output cast used by the deployed
// GaussianPRNG, and the L2-clipped Gaussian mechanism built on it.

#ifndef DPFORENSICS_GAUSSIAN_H_
#define DPFORENSICS_GAUSSIAN_H_

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "dpforensics/rng.h"

namespace dpforensics {

inline constexpr uint64_t kMarsagliaRadiusMax = (uint64_t{1} << 62) - 1;
// 2^62 - 1 and 2^31 - 1 as binary64. The former is not representable and
// rounds to 2^62.
inline constexpr double kMarsagliaRadiusScale = 4611686018427387903.0;
inline constexpr double kMarsagliaUnitScale = 2147483647.0;

struct GaussParams {
  double mu = 0.0;
  double sigma = 1.0;
  int dim = 1;

  static absl::StatusOr<GaussParams> Create(double mu, double sigma, int dim);
};

struct Float32Pair {
  float y1 = 0.0f;
  float y2 = 0.0f;
};

// v1^2 + v2^2 computed exactly. Inputs must fit in 32-bit signed range plus
// the window margin used by attacks.
inline uint64_t MarsagliaRadiusSquared(int64_t v1, int64_t v2) {
  return static_cast<uint64_t>(v1 * v1) + static_cast<uint64_t>(v2 * v2);
}

inline bool MarsagliaAccepts(int64_t v1, int64_t v2) {
  const uint64_t s = MarsagliaRadiusSquared(v1, v2);
  return s != 0 && s <= kMarsagliaRadiusMax;
}

// Evaluation order (normative, attacks compare bits):
//   R  = double(v1^2 + v2^2) / double(2^62 - 1)
//   U  = double(v) / double(2^31 - 1)
//   Zi = (Ui / sqrt(R)) * sqrt(-2 * log(R))
//   Yi = float(mu + sigma * Zi)
// Caller guarantees MarsagliaAccepts(v1, v2).
inline void MarsagliaStandardUnchecked(int64_t v1, int64_t v2, double& z1,
                                       double& z2) {
  const double r =
      static_cast<double>(MarsagliaRadiusSquared(v1, v2)) / kMarsagliaRadiusScale;
  const double u1 = static_cast<double>(v1) / kMarsagliaUnitScale;
  const double u2 = static_cast<double>(v2) / kMarsagliaUnitScale;
  const double root_r = std::sqrt(r);
  const double rho = std::sqrt(-2.0 * std::log(r));
  z1 = (u1 / root_r) * rho;
  z2 = (u2 / root_r) * rho;
}

inline Float32Pair MarsagliaPairUnchecked(int64_t v1, int64_t v2, double mu,
                                          double sigma) {
  double z1, z2;
  MarsagliaStandardUnchecked(v1, v2, z1, z2);
  return {static_cast<float>(mu + sigma * z1),
          static_cast<float>(mu + sigma * z2)};
}

// FAILED_PRECONDITION ("PreconditionViolation") unless
// 0 < v1^2 + v2^2 <= 2^62 - 1.
absl::StatusOr<Float32Pair> MarsagliaPair(int64_t v1, int64_t v2, double mu,
                                          double sigma);

// Draws signed 32-bit pairs until one lands in the disc. `proposals`, when
// non-null, is incremented once per drawn pair.
void DrawMarsagliaIntegers(RngStream& stream, int32_t& v1, int32_t& v2,
                           uint64_t* proposals = nullptr);

// dim binary32 samples, consumed pair by pair in order. For odd dim the second
// sample of the last pair is discarded.
std::vector<float> SampleGaussianVector(RngStream& stream,
                                        const GaussParams& params);

// x / max(1, ||x||) + N(0, sigma^2 I). The sum is formed in binary64 and cast
// once to binary32, matching MarsagliaPair with mu = x_i.
absl::StatusOr<std::vector<float>> GaussianMechanism(std::span<const double> x,
                                                     double sigma,
                                                     RngStream& stream);

// x / max(1, ||x||).
std::vector<double> ClipToUnitBall(std::span<const double> x);

}  // namespace dpforensics

#endif  // DPFORENSICS_GAUSSIAN_H_
