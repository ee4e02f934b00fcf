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

#include "dpforensics/secagg.h"

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"
#include "dpforensics/gaussian.h"

namespace dpforensics {

absl::StatusOr<SecAggMode> ParseSecAggMode(absl::string_view name) {
  if (name == "prio_symohe") return SecAggMode::kPrioSymOhe;
  if (name == "prio_plusplus") return SecAggMode::kPrioPlusPlus;
  if (name == "dp_disabled") return SecAggMode::kDpDisabled;
  return absl::InvalidArgumentError(absl::StrCat("unknown secagg mode '", name,
                                                 "'"));
}

absl::string_view SecAggModeName(SecAggMode mode) {
  switch (mode) {
    case SecAggMode::kPrioSymOhe:
      return "prio_symohe";
    case SecAggMode::kPrioPlusPlus:
      return "prio_plusplus";
    case SecAggMode::kDpDisabled:
      return "dp_disabled";
  }
  return "unknown";
}

bool IsPrime(uint64_t p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (uint64_t q = 3; q <= p / q; q += 2) {
    if (p % q == 0) return false;
  }
  return true;
}

absl::Status SecAggConfig::Validate() const {
  if (d < 1) return absl::InvalidArgumentError("d must be >= 1");
  if (n_clients < 1) return absl::InvalidArgumentError("n_clients must be >= 1");
  if (mode != SecAggMode::kPrioPlusPlus) {
    if (prime > (uint64_t{1} << 32) || !IsPrime(prime)) {
      return absl::InvalidArgumentError(
          absl::StrCat("field prime must be a prime <= 2^32, got ", prime));
    }
    if (prime <= static_cast<uint64_t>(n_clients)) {
      return absl::InvalidArgumentError(
          "field prime must exceed n_clients so payload sums do not wrap");
    }
  }
  if (mode == SecAggMode::kPrioSymOhe &&
      (!(epsilon > 0.0) || !std::isfinite(epsilon))) {
    return absl::InvalidArgumentError("epsilon must be finite and positive");
  }
  if (mode == SecAggMode::kPrioPlusPlus) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
      return absl::InvalidArgumentError("sigma must be finite and positive");
    }
    if (!(sigma_ss > 0.0) || !std::isfinite(sigma_ss)) {
      return absl::InvalidArgumentError("sigma_ss must be finite and positive");
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<FieldShareBundle> FieldShare(std::span<const uint64_t> payload,
                                            uint64_t prime, RngStream& stream) {
  FieldShareBundle bundle;
  bundle.prime = prime;
  bundle.leader_share.reserve(payload.size());
  bundle.helper_share.reserve(payload.size());
  for (uint64_t y : payload) {
    if (y >= prime) {
      return absl::OutOfRangeError(
          absl::StrCat("PayloadOutOfField: ", y, " >= p = ", prime));
    }
    const uint64_t r = stream.UniformIndex(prime);
    bundle.leader_share.push_back(r);
    bundle.helper_share.push_back((y + prime - r) % prime);
  }
  return bundle;
}

absl::StatusOr<std::vector<uint64_t>> FieldReconstruct(
    const FieldShareBundle& bundle) {
  if (bundle.leader_share.size() != bundle.helper_share.size()) {
    return absl::InvalidArgumentError("ShapeMismatch: share lengths differ");
  }
  std::vector<uint64_t> out(bundle.dim());
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = (bundle.leader_share[i] + bundle.helper_share[i]) % bundle.prime;
  }
  return out;
}

absl::StatusOr<FieldShareBundle> PrioClientSubmit(int64_t x,
                                                  const SecAggConfig& config,
                                                  RngStream& stream) {
  if (x < 1 || x > config.d) {
    return absl::OutOfRangeError(
        absl::StrCat("OutOfDomain: x=", x, " not in [1, ", config.d, "]"));
  }
  std::vector<uint64_t> payload(config.d, 0);
  if (config.mode == SecAggMode::kDpDisabled) {
    payload[x - 1] = 1;
  } else if (config.mode == SecAggMode::kPrioSymOhe) {
    absl::StatusOr<SketchConfig> sketch =
        SketchConfig::Create(config.epsilon, config.d);
    if (!sketch.ok()) return sketch.status();
    absl::StatusOr<BitVector> y = SymOhe(x, *sketch, stream);
    if (!y.ok()) return y.status();
    for (int64_t i = 0; i < config.d; ++i) payload[i] = (*y)[i];
  } else {
    return absl::InvalidArgumentError(
        "prio_plusplus clients submit float vectors, not integers");
  }
  return FieldShare(payload, config.prime, stream);
}

std::vector<double> ExpandHelperShare(uint64_t seed, size_t dim,
                                      double sigma_ss) {
  RngStream helper(seed);
  const std::vector<float> v = SampleGaussianVector(
      helper, GaussParams{0.0, sigma_ss, static_cast<int>(dim)});
  return std::vector<double>(v.begin(), v.end());
}

absl::StatusOr<GaussShareBundle> GaussSecretShare(std::span<const double> y,
                                                  double sigma_ss,
                                                  RngStream& stream) {
  if (!(sigma_ss > 0.0) || !std::isfinite(sigma_ss)) {
    return absl::InvalidArgumentError("sigma_ss must be finite and positive");
  }
  if (y.empty()) return absl::InvalidArgumentError("empty payload");
  for (double v : y) {
    if (!std::isfinite(v)) return absl::InvalidArgumentError("NonFiniteInput");
  }
  GaussShareBundle bundle;
  bundle.helper_seed = stream.NextU64();
  bundle.sigma_ss = sigma_ss;
  const std::vector<double> v =
      ExpandHelperShare(bundle.helper_seed, y.size(), sigma_ss);
  bundle.leader_share.resize(y.size());
  for (size_t i = 0; i < y.size(); ++i) bundle.leader_share[i] = y[i] - v[i];
  return bundle;
}

absl::StatusOr<std::vector<double>> GaussReconstruct(
    const GaussShareBundle& bundle) {
  std::vector<double> out = ExpandHelperShare(
      bundle.helper_seed, bundle.dim(), bundle.sigma_ss);
  for (size_t i = 0; i < out.size(); ++i) out[i] += bundle.leader_share[i];
  return out;
}

absl::StatusOr<GaussShareBundle> PrioPlusPlusClientSubmit(
    std::span<const double> x, const SecAggConfig& config, RngStream& stream) {
  if (static_cast<int64_t>(x.size()) != config.d) {
    return absl::InvalidArgumentError(absl::StrCat(
        "ShapeMismatch: input has ", x.size(), " coordinates, d=", config.d));
  }
  absl::StatusOr<std::vector<float>> y = GaussianMechanism(x, config.sigma, stream);
  if (!y.ok()) return y.status();
  const std::vector<double> payload(y->begin(), y->end());
  return GaussSecretShare(payload, config.sigma_ss, stream);
}

absl::StatusOr<std::vector<uint64_t>> AggregateField(
    std::span<const FieldShareBundle> bundles, AggregateSide side) {
  if (bundles.empty()) return absl::InvalidArgumentError("no bundles");
  const size_t d = bundles.front().dim();
  const uint64_t p = bundles.front().prime;
  std::vector<uint64_t> sum(d, 0);
  for (const FieldShareBundle& b : bundles) {
    if (b.dim() != d || b.helper_share.size() != d || b.prime != p) {
      return absl::InvalidArgumentError("ShapeMismatch: heterogeneous bundles");
    }
    for (size_t i = 0; i < d; ++i) {
      uint64_t term = 0;
      switch (side) {
        case AggregateSide::kLeader:
          term = b.leader_share[i];
          break;
        case AggregateSide::kHelper:
          term = b.helper_share[i];
          break;
        case AggregateSide::kCombined:
          term = (b.leader_share[i] + b.helper_share[i]) % p;
          break;
      }
      sum[i] = (sum[i] + term) % p;
    }
  }
  return sum;
}

absl::StatusOr<std::vector<double>> AggregateGauss(
    std::span<const GaussShareBundle> bundles, AggregateSide side) {
  if (bundles.empty()) return absl::InvalidArgumentError("no bundles");
  const size_t d = bundles.front().dim();
  std::vector<double> leader(d, 0.0), helper(d, 0.0);
  for (const GaussShareBundle& b : bundles) {
    if (b.dim() != d) {
      return absl::InvalidArgumentError("ShapeMismatch: heterogeneous bundles");
    }
    if (side != AggregateSide::kHelper) {
      for (size_t i = 0; i < d; ++i) leader[i] += b.leader_share[i];
    }
    if (side != AggregateSide::kLeader) {
      const std::vector<double> v =
          ExpandHelperShare(b.helper_seed, d, b.sigma_ss);
      for (size_t i = 0; i < d; ++i) helper[i] += v[i];
    }
  }
  if (side == AggregateSide::kLeader) return leader;
  if (side == AggregateSide::kHelper) return helper;
  for (size_t i = 0; i < d; ++i) leader[i] += helper[i];
  return leader;
}

bool AcceptAll(const FieldShareBundle&) { return true; }

absl::StatusOr<SimulationResult> Simulate(
    const SecAggConfig& config, uint64_t master_seed,
    std::span<const int64_t> inputs,
    std::span<const std::vector<double>> vector_inputs,
    const ValidityHook& validity) {
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  SimulationResult result;
  result.config = config;
  result.master_seed = master_seed;
  const int64_t n = config.n_clients;

  if (config.mode == SecAggMode::kPrioPlusPlus) {
    if (static_cast<int64_t>(vector_inputs.size()) != n) {
      return absl::InvalidArgumentError(absl::StrCat(
          "prio_plusplus needs one input vector per client (", n, ")"));
    }
    for (int64_t i = 0; i < n; ++i) {
      RngStream stream = RngStream::Derive(master_seed, i);
      absl::StatusOr<GaussShareBundle> b =
          PrioPlusPlusClientSubmit(vector_inputs[i], config, stream);
      if (!b.ok()) return b.status();
      result.vector_inputs.push_back(vector_inputs[i]);
      result.gauss_bundles.push_back(*std::move(b));
    }
    auto leader = AggregateGauss(result.gauss_bundles, AggregateSide::kLeader);
    auto helper = AggregateGauss(result.gauss_bundles, AggregateSide::kHelper);
    auto combined =
        AggregateGauss(result.gauss_bundles, AggregateSide::kCombined);
    if (!combined.ok()) return combined.status();
    result.leader_sum = *leader;
    result.helper_sum = *helper;
    result.combined_sum = *combined;
    return result;
  }

  if (!inputs.empty() && static_cast<int64_t>(inputs.size()) != n) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected ", n, " inputs, got ", inputs.size()));
  }
  std::vector<FieldShareBundle> accepted_bundles;
  for (int64_t i = 0; i < n; ++i) {
    RngStream stream = RngStream::Derive(master_seed, i);
    const int64_t x =
        inputs.empty() ? 1 + static_cast<int64_t>(stream.UniformIndex(config.d))
                       : inputs[i];
    absl::StatusOr<FieldShareBundle> b = PrioClientSubmit(x, config, stream);
    if (!b.ok()) return b.status();
    absl::StatusOr<std::vector<uint64_t>> y = FieldReconstruct(*b);
    if (!y.ok()) return y.status();
    std::vector<uint64_t> one_hot(config.d, 0);
    one_hot[x - 1] = 1;
    const bool ok = validity(*b);
    result.inputs.push_back(x);
    result.exact_recovery.push_back(*y == one_hot);
    result.reconstructed.push_back(*std::move(y));
    result.accepted.push_back(ok);
    if (ok) accepted_bundles.push_back(*b);
    result.field_bundles.push_back(*std::move(b));
  }
  if (accepted_bundles.empty()) {
    result.leader_aggregate.assign(config.d, 0);
    result.helper_aggregate.assign(config.d, 0);
    result.combined_aggregate.assign(config.d, 0);
    return result;
  }
  auto leader = AggregateField(accepted_bundles, AggregateSide::kLeader);
  auto helper = AggregateField(accepted_bundles, AggregateSide::kHelper);
  auto combined = AggregateField(accepted_bundles, AggregateSide::kCombined);
  if (!combined.ok()) return combined.status();
  result.leader_aggregate = *leader;
  result.helper_aggregate = *helper;
  result.combined_aggregate = *combined;
  return result;
}

}  // namespace dpforensics
