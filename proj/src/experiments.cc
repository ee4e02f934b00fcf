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

#include "dpforensics/experiments.h"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpforensics/attacks.h"
#include "dpforensics/gaussian.h"
#include "dpforensics/laplace.h"
#include "dpforensics/secagg.h"
#include "dpforensics/sketch.h"

namespace dpforensics {
namespace {

absl::Status RequirePositive(int64_t v, const char* name) {
  if (v < 1) {
    return absl::InvalidArgumentError(absl::StrCat(name, " must be >= 1"));
  }
  return absl::OkStatus();
}

// Runs fn(t) -> (secret_bit, prediction) for each trial and tallies.
template <typename Fn>
ConfusionMatrix Tally(int64_t runs, Execution exec, const Fn& fn) {
  std::vector<uint8_t> secret(runs), pred(runs);
  ForEachTrial(runs, exec, [&](int64_t t) {
    const auto [s, p] = fn(t);
    secret[t] = s;
    pred[t] = p;
  });
  ConfusionMatrix c;
  for (int64_t t = 0; t < runs; ++t) c.Add(secret[t], pred[t]);
  return c;
}

}  // namespace

double Rate::standard_error() const {
  if (trials == 0) return 0.0;
  const double p = value();
  return std::sqrt(p * (1.0 - p) / trials);
}

absl::StatusOr<ConfusionMatrix> PhiLapRates(double epsilon, double range,
                                            int64_t trials, uint64_t seed,
                                            Execution exec) {
  if (absl::Status s = RequirePositive(trials, "trials"); !s.ok()) return s;
  absl::StatusOr<LaplaceParams> p0 =
      LaplaceParams::FromRangeEpsilon(0.0, range, epsilon);
  if (!p0.ok()) return p0.status();
  LaplaceParams p1 = *p0;
  p1.mu = range;
  return Tally(2 * trials, exec, [&](int64_t t) {
    RngStream stream = RngStream::Derive(seed, t);
    const int s = t % 2;
    const double y = SampleLaplace(stream, s ? p1 : *p0);
    return std::pair<int, int>(s, PhiLap(y, 0.0, p0->lambda) ? 1 : 0);
  });
}

absl::StatusOr<AgeReconstructionResult> AgeReconstruction(
    int64_t m, double epsilon, double range, int64_t domain_max,
    int64_t trials, uint64_t seed, Execution exec) {
  if (absl::Status s = RequirePositive(m, "m"); !s.ok()) return s;
  if (absl::Status s = RequirePositive(trials, "trials"); !s.ok()) return s;
  if (domain_max < 0) return absl::InvalidArgumentError("domain_max < 0");
  absl::StatusOr<LaplaceParams> base =
      LaplaceParams::FromRangeEpsilon(0.0, range, epsilon);
  if (!base.ok()) return base.status();
  std::vector<int64_t> domain(domain_max + 1);
  std::iota(domain.begin(), domain.end(), 0);

  std::vector<uint8_t> singleton(trials), contains(trials);
  ForEachTrial(trials, exec, [&](int64_t t) {
    RngStream stream = RngStream::Derive(seed, t);
    const int64_t age = stream.UniformIndex(domain_max + 1);
    LaplaceParams p = *base;
    p.mu = static_cast<double>(age);
    std::vector<double> y(m);
    for (double& v : y) v = SampleLaplace(stream, p);
    const std::vector<int64_t> feasible =
        *ReconstructLaplaceInput(y, domain, p.lambda);
    bool in = false;
    for (int64_t c : feasible) in |= (c == age);
    contains[t] = in;
    singleton[t] = in && feasible.size() == 1;
  });
  AgeReconstructionResult r;
  r.singleton.trials = r.contains.trials = trials;
  for (int64_t t = 0; t < trials; ++t) {
    r.singleton.hits += singleton[t];
    r.contains.hits += contains[t];
  }
  return r;
}

absl::StatusOr<ConfusionMatrix> PhiGaussRates(double offset, double sigma,
                                              int k, int64_t pairs,
                                              uint64_t seed, Execution exec) {
  if (absl::Status s = RequirePositive(pairs, "pairs"); !s.ok()) return s;
  if (!(sigma > 0.0)) return absl::InvalidArgumentError("sigma must be > 0");
  const double sigma2 = sigma * sigma;
  return Tally(2 * pairs, exec, [&](int64_t t) {
    RngStream stream = RngStream::Derive(seed, t);
    const int s = t % 2;
    int32_t v1, v2;
    DrawMarsagliaIntegers(stream, v1, v2);
    const Float32Pair y = MarsagliaPairUnchecked(v1, v2, s ? offset : 0.0, sigma);
    return std::pair<int, int>(s, PhiGauss(y.y1, y.y2, 0.0, sigma2, k) ? 1 : 0);
  });
}

absl::StatusOr<Rate> SymOheHamming(double epsilon, int64_t d,
                                   int64_t threshold, int64_t trials,
                                   uint64_t seed, Execution exec) {
  if (absl::Status s = RequirePositive(trials, "trials"); !s.ok()) return s;
  absl::StatusOr<SketchConfig> config = SketchConfig::Create(epsilon, d);
  if (!config.ok()) return config.status();
  const int64_t x = 1;
  BitVector v(d, 0);
  v[x - 1] = 1;
  Rate r;
  r.trials = trials;
  r.hits = CountTrials(trials, exec, [&](int64_t t) {
    RngStream stream = RngStream::Derive(seed, t);
    const BitVector y = *SymOhe(x, *config, stream);
    return HammingDistance(y, v) <= threshold;
  });
  return r;
}

absl::StatusOr<Rate> CmsRetention(const std::string& input, double epsilon,
                                  int64_t d, int64_t k, int64_t trials,
                                  uint64_t seed, Execution exec) {
  if (absl::Status s = RequirePositive(trials, "trials"); !s.ok()) return s;
  absl::StatusOr<SketchConfig> config = SketchConfig::Create(epsilon, d, k);
  if (!config.ok()) return config.status();
  Rate r;
  r.trials = trials;
  r.hits = CountTrials(trials, exec, [&](int64_t t) {
    RngStream stream = RngStream::Derive(seed, t);
    const CmsRecord rec = *CmsClient(input, *config, stream);
    return CmsPlausible(rec, input, d);
  });
  return r;
}

absl::StatusOr<ConfusionMatrix> DzkAttack(double sigma_ss, int64_t d,
                                          int64_t runs, int k, uint64_t seed,
                                          Execution exec) {
  if (absl::Status s = RequirePositive(runs, "runs"); !s.ok()) return s;
  if (d < 2 || d % 2 != 0) {
    return absl::InvalidArgumentError("d must be even and >= 2");
  }
  if (!(sigma_ss > 0.0)) return absl::InvalidArgumentError("sigma_ss <= 0");
  const std::vector<double> zero(d, 0.0);
  const std::vector<double> unit(d, 1.0 / std::sqrt(static_cast<double>(d)));
  const double sigma2 = sigma_ss * sigma_ss;
  return Tally(runs, exec, [&](int64_t t) {
    RngStream stream = RngStream::Derive(seed, t);
    const int s = t % 2;
    const GaussShareBundle b =
        *GaussSecretShare(s ? unit : zero, sigma_ss, stream);
    std::vector<float> w(d);
    for (int64_t i = 0; i < d; ++i) {
      w[i] = static_cast<float>(0.0 - b.leader_share[i]);
    }
    return std::pair<int, int>(s, *BoostedGaussTest(w, 0.0, sigma2, k) ? 1 : 0);
  });
}

}  // namespace dpforensics
