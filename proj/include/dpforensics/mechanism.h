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

// Tagged outputs and inputs shared by mechanisms, attacks and the auditor.

#ifndef DPFORENSICS_MECHANISM_H_
#define DPFORENSICS_MECHANISM_H_

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "dpforensics/rng.h"
#include "dpforensics/secagg.h"
#include "dpforensics/sketch.h"

namespace dpforensics {

// m independent Laplace releases of one scalar query.
struct LaplaceOutput {
  std::vector<double> samples;
};

struct GaussianOutput {
  std::vector<float> y;
};

// A symOHE vector as reconstructed by a party holding both field shares.
struct SymOheOutput {
  BitVector y;
};

using MechanismReport =
    std::variant<LaplaceOutput, GaussianOutput, SymOheOutput, CmsRecord,
                 HcmsRecord, ObhRecord, GaussShareBundle>;

// Scalar query value, domain index, byte string, or real vector.
using MechanismInput =
    std::variant<double, int64_t, std::string, std::vector<double>>;

using Mechanism = std::function<absl::StatusOr<MechanismReport>(
    const MechanismInput& x, RngStream& stream)>;

// Hard-label membership test: 0 means the report came from x0, 1 from x1.
// Must be safe to call concurrently.
struct MembershipTest {
  std::string label;
  std::function<int(const MechanismReport&)> predict;
};

}  // namespace dpforensics

#endif  // DPFORENSICS_MECHANISM_H_
