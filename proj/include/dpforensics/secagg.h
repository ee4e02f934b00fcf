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

// Single-process simulator of the two-server (leader/helper) secure
// aggregation dataflow: additive field shares for bit-vector payloads, and the
// seed-expanded Gaussian shares of the float-vector variant.

#ifndef DPFORENSICS_SECAGG_H_
#define DPFORENSICS_SECAGG_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dpforensics/rng.h"
#include "dpforensics/sketch.h"

namespace dpforensics {

inline constexpr uint64_t kDefaultFieldPrime = 2147483647;  // 2^31 - 1

struct FieldShareBundle {
  std::vector<uint64_t> leader_share;
  std::vector<uint64_t> helper_share;
  uint64_t prime = kDefaultFieldPrime;

  size_t dim() const { return leader_share.size(); }
};

// The helper share is a seed; the helper expands it with the same Gaussian
// sampler the client used.
struct GaussShareBundle {
  std::vector<double> leader_share;
  uint64_t helper_seed = 0;
  double sigma_ss = 1.0;

  size_t dim() const { return leader_share.size(); }
};

enum class SecAggMode { kPrioSymOhe, kPrioPlusPlus, kDpDisabled };

absl::StatusOr<SecAggMode> ParseSecAggMode(absl::string_view name);
absl::string_view SecAggModeName(SecAggMode mode);

struct SecAggConfig {
  SecAggMode mode = SecAggMode::kDpDisabled;
  double epsilon = 1.0;
  int64_t d = 2;
  uint64_t prime = kDefaultFieldPrime;
  double sigma = 1.0;
  double sigma_ss = 1.0;
  int64_t n_clients = 1;

  absl::Status Validate() const;
};

enum class AggregateSide { kLeader, kHelper, kCombined };

bool IsPrime(uint64_t p);

// Leader share uniform over F_p^d; helper = payload - leader mod p.
absl::StatusOr<FieldShareBundle> FieldShare(std::span<const uint64_t> payload,
                                            uint64_t prime, RngStream& stream);

absl::StatusOr<std::vector<uint64_t>> FieldReconstruct(
    const FieldShareBundle& bundle);

// Bit-vector client: symOHE randomization (or the raw one-hot vector when DP
// is disabled), then field sharing. x in [1, d].
absl::StatusOr<FieldShareBundle> PrioClientSubmit(int64_t x,
                                                  const SecAggConfig& config,
                                                  RngStream& stream);

// Draws a fresh seed from `stream`, expands V ~ N(0, sigma_ss^2 I) with the
// binary32 Marsaglia sampler and returns (y - V, seed).
absl::StatusOr<GaussShareBundle> GaussSecretShare(std::span<const double> y,
                                                  double sigma_ss,
                                                  RngStream& stream);

// The helper's view: V regenerated from the seed.
std::vector<double> ExpandHelperShare(uint64_t seed, size_t dim,
                                      double sigma_ss);

absl::StatusOr<std::vector<double>> GaussReconstruct(
    const GaussShareBundle& bundle);

// Float-vector client: Gaussian mechanism on x, then Gaussian secret sharing.
absl::StatusOr<GaussShareBundle> PrioPlusPlusClientSubmit(
    std::span<const double> x, const SecAggConfig& config, RngStream& stream);

// Per-side sums, folded in bundle (client index) order.
absl::StatusOr<std::vector<uint64_t>> AggregateField(
    std::span<const FieldShareBundle> bundles, AggregateSide side);
absl::StatusOr<std::vector<double>> AggregateGauss(
    std::span<const GaussShareBundle> bundles, AggregateSide side);

// Share validity hook where SNIP verification would sit. The default accepts
// every submission.
using ValidityHook = std::function<bool(const FieldShareBundle&)>;
bool AcceptAll(const FieldShareBundle&);

// Role-labeled result of one simulated collection round.
struct SimulationResult {
  SecAggConfig config;
  uint64_t master_seed = 0;
  // Field modes.
  std::vector<int64_t> inputs;
  std::vector<FieldShareBundle> field_bundles;
  std::vector<uint64_t> leader_aggregate;
  std::vector<uint64_t> helper_aggregate;
  std::vector<uint64_t> combined_aggregate;
  std::vector<std::vector<uint64_t>> reconstructed;  // colluding-endpoint view
  std::vector<bool> exact_recovery;                  // reconstructed == raw input
  std::vector<bool> accepted;
  // Float-vector mode.
  std::vector<std::vector<double>> vector_inputs;
  std::vector<GaussShareBundle> gauss_bundles;
  std::vector<double> leader_sum;
  std::vector<double> helper_sum;
  std::vector<double> combined_sum;
};

// Client i uses RngStream::Derive(master_seed, i). For the field modes the
// input x_i is drawn uniformly from [1, d] on that stream unless `inputs` is
// non-empty; for the float-vector mode `vector_inputs` must hold one vector of
// length d per client.
absl::StatusOr<SimulationResult> Simulate(
    const SecAggConfig& config, uint64_t master_seed,
    std::span<const int64_t> inputs = {},
    std::span<const std::vector<double>> vector_inputs = {},
    const ValidityHook& validity = AcceptAll);

}  // namespace dpforensics

#endif  // DPFORENSICS_SECAGG_H_
