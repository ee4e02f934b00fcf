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

// Monte Carlo rate estimators for the attacks and encoders. Trial t always
// draws from RngStream::Derive(seed, t), so the parallel and serial paths
// agree exactly.

#ifndef DPFORENSICS_EXPERIMENTS_H_
#define DPFORENSICS_EXPERIMENTS_H_

#include <cstdint>
#include <string>

#include "absl/status/statusor.h"
#include "dpforensics/parallel.h"
#include "dpforensics/posterior.h"

namespace dpforensics {

struct Rate {
  int64_t hits = 0;
  int64_t trials = 0;

  double value() const {
    return trials == 0 ? 0.0 : static_cast<double>(hits) / trials;
  }
  // Binomial standard error of value().
  double standard_error() const;
};

// Single-sample phi_lap: `trials` honest draws at mu = 0 (false positives)
// and `trials` draws at mu = range (true positives), lambda = range / epsilon.
absl::StatusOr<ConfusionMatrix> PhiLapRates(double epsilon, double range,
                                            int64_t trials, uint64_t seed,
                                            Execution exec);

struct AgeReconstructionResult {
  Rate singleton;  // feasible set == {true age}
  Rate contains;   // true age among the feasible candidates
};

// Age uniform over [0, domain_max]; m samples with lambda = range / epsilon;
// candidates 0..domain_max.
absl::StatusOr<AgeReconstructionResult> AgeReconstruction(
    int64_t m, double epsilon, double range, int64_t domain_max,
    int64_t trials, uint64_t seed, Execution exec);

// Single-pair phi_gauss on Marsaglia pairs at (0, sigma^2): honest pairs
// tested at mu = 0 and pairs shifted by `offset` tested at mu = 0.
absl::StatusOr<ConfusionMatrix> PhiGaussRates(double offset, double sigma,
                                              int k, int64_t pairs,
                                              uint64_t seed, Execution exec);

// Fraction of trials with Hamming(symOHE(x), onehot(x)) <= threshold.
absl::StatusOr<Rate> SymOheHamming(double epsilon, int64_t d,
                                   int64_t threshold, int64_t trials,
                                   uint64_t seed, Execution exec);

// Fraction of CMS records whose decoded set retains `input`.
absl::StatusOr<Rate> CmsRetention(const std::string& input, double epsilon,
                                  int64_t d, int64_t k, int64_t trials,
                                  uint64_t seed, Execution exec);

// Leader-share distinguishing attack: each run secret-shares either 0 or the
// unit-norm constant vector with sigma_ss; the leader replays
// float(0 - leader_share) through the boosted Gaussian test at (0, sigma_ss^2).
absl::StatusOr<ConfusionMatrix> DzkAttack(double sigma_ss, int64_t d,
                                          int64_t runs, int k, uint64_t seed,
                                          Execution exec);

}  // namespace dpforensics

#endif  // DPFORENSICS_EXPERIMENTS_H_
