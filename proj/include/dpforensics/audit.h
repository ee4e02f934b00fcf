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

// End-to-end epsilon lower-bound estimator: run a mechanism on a random
// secret split, score a membership test, and invert the rejected trade-off
// curve to (eps, delta).

#ifndef DPFORENSICS_AUDIT_H_
#define DPFORENSICS_AUDIT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpforensics/mechanism.h"
#include "dpforensics/parallel.h"
#include "dpforensics/posterior.h"
#include "dpforensics/tradeoff.h"

namespace dpforensics {

// Stream indices reserved next to the per-run indices 0..n-1.
inline constexpr uint64_t kSecretStreamIndex = ~uint64_t{0};
inline constexpr uint64_t kMonteCarloStreamIndex = ~uint64_t{0} - 1;

inline constexpr int64_t kDefaultMcSamples = 100000;
inline constexpr int64_t kMinAuditRuns = 100;

struct AuditOptions {
  int64_t n = 1000;
  Family family = Family::kEpsDelta;
  double gamma = 0.05;
  double delta = 0.0;
  double claimed_epsilon = 1.0;
  uint64_t master_seed = 0;
  int64_t mc_samples = kDefaultMcSamples;
  Execution exec = Execution::kParallel;
};

struct AuditReport {
  double eps_lb = 0.0;
  double delta = 0.0;
  double gamma = 0.05;
  Family family = Family::kEpsDelta;
  double theta_star = 0.0;
  bool saturated = false;
  ConfusionMatrix confusion;
  int64_t n_runs = 0;
  uint64_t master_seed = 0;
  int64_t mc_samples = 0;
  double claimed_epsilon = 0.0;
  bool violation = false;
  std::string mechanism;
  std::string attack;
  double runtime_seconds = 0.0;
  std::vector<uint8_t> secret_bits;
  std::vector<uint8_t> predictions;
};

// eps at `delta` of the family member theta; saturates at 64.
double EpsilonLbForTheta(Family family, double theta, double delta,
                         bool* saturated = nullptr);

// Run i feeds x_{S_i} to the mechanism on RngStream::Derive(master_seed, i).
// S is drawn from the kSecretStreamIndex stream and redrawn once if it is
// constant (then FAILED_PRECONDITION "DegenerateSplit"). The Monte Carlo seed
// is DeriveSeed(master_seed, kMonteCarloStreamIndex). VIOLATION iff
// eps_lb > claimed_epsilon.
absl::StatusOr<AuditReport> AuditEpsilonLb(const Mechanism& mechanism,
                                           const MembershipTest& test,
                                           const MechanismInput& x0,
                                           const MechanismInput& x1,
                                           const AuditOptions& options);

// Confusion-matrix stage only, for callers that already have predictions.
absl::StatusOr<AuditReport> AuditFromConfusion(const ConfusionMatrix& confusion,
                                               const AuditOptions& options);

absl::string_view VerdictName(bool violation);

// Report as pretty JSON. Timing fields are left out when `include_timing` is
// false so replays can be compared byte for byte.
std::string AuditReportToJson(const AuditReport& report,
                              bool include_timing = true);

// run_index,secret_bit,prediction rows with a header line.
std::string AuditReportToCsv(const AuditReport& report);

}  // namespace dpforensics

#endif  // DPFORENSICS_AUDIT_H_
