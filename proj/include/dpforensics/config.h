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

// JSON configuration for audits, experiments and SecAgg simulations, and the
// name registry that turns them into mechanisms and membership tests.
// Parse and validation errors carry "line N:" prefixes pointing into the
// config text.

#ifndef DPFORENSICS_CONFIG_H_
#define DPFORENSICS_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dpforensics/audit.h"
#include "dpforensics/mechanism.h"
#include "dpforensics/secagg.h"

namespace dpforensics {

// Mechanism name plus the union of parameters used by any registered
// mechanism. Names: laplace, gaussian, gauss_share, prio_symohe, cms, hcms,
// obh.
struct MechanismParams {
  std::string name;
  double epsilon = 1.0;
  double range = 1.0;
  int64_t samples = 1;
  double sigma = 1.0;
  double sigma_ss = 1.0;
  int64_t d = 1;
  int64_t k = 1;
  uint64_t prime = kDefaultFieldPrime;
};

// Names: phi_lap, boosted_gauss, dzk_gauss, prio_membership, cms_decode,
// hcms_decode, obh_plausible.
struct AttackParams {
  std::string name;
  int window = 80;
  std::string rule = "both_bits";
};

struct AuditConfig {
  std::string name;
  MechanismParams mechanism;
  AttackParams attack;
  MechanismInput x0;
  MechanismInput x1;
  AuditOptions options;
  bool has_seed = false;
};

absl::StatusOr<AuditConfig> ParseAuditConfig(absl::string_view text);

absl::StatusOr<Mechanism> BuildMechanism(const MechanismParams& params);
absl::StatusOr<MembershipTest> BuildAttack(const AttackParams& attack,
                                           const MechanismParams& mechanism,
                                           const MechanismInput& x0,
                                           const MechanismInput& x1);

absl::StatusOr<AuditReport> RunAudit(const AuditConfig& config);

// Experiment configs: {"experiment": <name>, ...}. Names: phi_lap_rates,
// age_reconstruction, phi_gauss_rates, symohe_hamming, cms_retention,
// dzk_attack. Returns the result as JSON text.
absl::StatusOr<std::string> RunExperimentConfig(
    absl::string_view text, std::optional<uint64_t> seed_override,
    Execution exec = Execution::kParallel);

struct SimulateConfig {
  SecAggConfig secagg;
  uint64_t master_seed = 0;
  bool has_seed = false;
  std::vector<int64_t> inputs;
  std::vector<double> vector_input;  // prio_plusplus: shared by every client
  int64_t dzk_runs = 0;
};

absl::StatusOr<SimulateConfig> ParseSimulateConfig(absl::string_view text);

// Role views, combined reconstruction, exact-recovery flags and, for
// prio_plusplus with dzk_runs > 0, a leader-view attack summary.
absl::StatusOr<std::string> RunSimulateConfig(const SimulateConfig& config);

}  // namespace dpforensics

#endif  // DPFORENSICS_CONFIG_H_
