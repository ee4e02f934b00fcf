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

#include "dpforensics/laplace.h"

#include <cmath>
#include <cstdint>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpforensics {

absl::StatusOr<LaplaceParams> LaplaceParams::Create(double mu, double lambda) {
  if (!std::isfinite(mu)) {
    return absl::InvalidArgumentError("Laplace mean must be finite");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Laplace scale must be finite and positive, got ", lambda));
  }
  return LaplaceParams{mu, lambda};
}

absl::StatusOr<LaplaceParams> LaplaceParams::FromRangeEpsilon(double mu,
                                                              double range,
                                                              double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError("Epsilon must be finite and positive");
  }
  if (!(range > 0.0) || !std::isfinite(range)) {
    return absl::InvalidArgumentError("Range must be finite and positive");
  }
  return Create(mu, range / epsilon);
}

absl::StatusOr<double> LaplaceInverseCdf(double u, double lambda) {
  if (!(u >= 0.0 && u <= 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat("u outside [0,1]: ", u));
  }
  const double y = LaplaceInverseCdfUnchecked(u, lambda);
  if (!std::isfinite(y)) {
    return absl::OutOfRangeError("SaturatedSample: inverse CDF at u=0 or u=1");
  }
  return y;
}

absl::StatusOr<double> LaplaceFromRaw(uint32_t raw,
                                      const LaplaceParams& params) {
  const double u = RngStream::UnitDoubleFromRaw(raw);
  absl::StatusOr<double> noise = LaplaceInverseCdf(u, params.lambda);
  if (!noise.ok()) return noise.status();
  return params.mu + *noise;
}

double SampleLaplace(RngStream& stream, const LaplaceParams& params) {
  for (;;) {
    const uint32_t raw = stream.NextU32();
    if (raw == 0 || raw == UINT32_MAX) continue;
    const double u = RngStream::UnitDoubleFromRaw(raw);
    return params.mu + LaplaceInverseCdfUnchecked(u, params.lambda);
  }
}

}  // namespace dpforensics
