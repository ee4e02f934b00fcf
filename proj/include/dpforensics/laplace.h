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

// Inverse-transform Laplace sampler over a 2^32-point uniform grid, exactly as
// deployed. The arithmetic is intentionally naive: the grid gaps it leaves in
// the output distribution are what the infeasibility attacks detect.

#ifndef DPFORENSICS_LAPLACE_H_
#define DPFORENSICS_LAPLACE_H_

#include <cmath>
#include <cstdint>

#include "absl/status/statusor.h"
#include "dpforensics/rng.h"

namespace dpforensics {

struct LaplaceParams {
  double mu = 0.0;
  double lambda = 1.0;

  static absl::StatusOr<LaplaceParams> Create(double mu, double lambda);
  // lambda = range / epsilon.
  static absl::StatusOr<LaplaceParams> FromRangeEpsilon(double mu, double range,
                                                        double epsilon);
};

// sign(x) in {-1, 0, +1}.
inline double Sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// sign(1/2 - u) * lambda * ln(1 - 2|u - 1/2|), evaluated left to right in
// binary64. u in {0, 1} would give +-inf and is reported as OUT_OF_RANGE
// ("SaturatedSample").
absl::StatusOr<double> LaplaceInverseCdf(double u, double lambda);

// Same formula without the saturation check. Hot path for attacks.
inline double LaplaceInverseCdfUnchecked(double u, double lambda);

// 1/2 (1 + sign(y) (1 - exp(-|y| / lambda))).
inline double LaplaceCdf(double y, double lambda);

// mu + F^{-1}(U) with U = next_u32 / (2^32 - 1). Saturated draws (raw 0 or
// 2^32 - 1) are redrawn.
double SampleLaplace(RngStream& stream, const LaplaceParams& params);

// Output for one raw 32-bit draw, or nullopt-like error on saturation. Lets
// tests invert the grid.
absl::StatusOr<double> LaplaceFromRaw(uint32_t raw, const LaplaceParams& params);

inline double LaplaceInverseCdfUnchecked(double u, double lambda) {
  const double s = Sign(0.5 - u);
  const double a = std::abs(u - 0.5);
  const double t = 1.0 - 2.0 * a;
  return s * lambda * std::log(t);
}

inline double LaplaceCdf(double y, double lambda) {
  const double e = std::exp(-std::abs(y) / lambda);
  return 0.5 * (1.0 + Sign(y) * (1.0 - e));
}

}  // namespace dpforensics

#endif  // DPFORENSICS_LAPLACE_H_
