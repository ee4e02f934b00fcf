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

// Infeasibility tests against the float samplers, sketch decoders and the
// Prio membership rules.

#ifndef DPFORENSICS_ATTACKS_H_
#define DPFORENSICS_ATTACKS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dpforensics/sketch.h"

namespace dpforensics {

inline constexpr int kDefaultGaussWindow = 80;

// True iff mu + F^{-1}(F(y - mu)) != y bitwise, i.e. y is unreachable from
// the Laplace sampler centred at mu.
bool PhiLap(double y, double mu, double lambda);

// OR of PhiLap over samples. INVALID_ARGUMENT on an empty sample list.
absl::StatusOr<bool> BoostedLapTest(std::span<const double> samples, double mu,
                                    double lambda);

// Candidates mu in `domain` that no sample rules out, in domain order.
absl::StatusOr<std::vector<int64_t>> ReconstructLaplaceInput(
    std::span<const double> samples, std::span<const int64_t> domain,
    double lambda);

// Whether a float pair is unreachable from the Marsaglia sampler at
// (mu, sigma2).
//
// The integer pair is rebuilt from the observation: R from
// exp(-(z1^2 + z2^2) / 2) rescaled to the integer grid, the larger-|z|
// coordinate from R, the other from the ratio z_small / z_large. Every
// in-precondition pair in the (2k+1)^2 window around it is replayed; the
// result is true iff none reproduces (y1, y2) bitwise. z1 = z2 = 0 returns
// true. Scans centre-out and stops at the first match.
bool PhiGauss(float y1, float y2, double mu, double sigma2,
              int k = kDefaultGaussWindow);

// Row-major full-window scan. Same verdict as PhiGauss.
bool PhiGaussReference(float y1, float y2, double mu, double sigma2,
                       int k = kDefaultGaussWindow);

// OR of PhiGauss over (samples[2i], samples[2i+1]). Requires an even,
// non-empty sample list.
absl::StatusOr<bool> BoostedGaussTest(std::span<const float> samples,
                                      double mu, double sigma2,
                                      int k = kDefaultGaussWindow);

// Ordered, duplicate-free, non-empty candidate list.
class GuessSet {
 public:
  static absl::StatusOr<GuessSet> Create(std::vector<std::string> candidates);
  // UTF-8 text, one candidate per line. Blank lines and a trailing '\r' are
  // ignored.
  static absl::StatusOr<GuessSet> FromText(absl::string_view text);
  static absl::StatusOr<GuessSet> FromFile(const std::string& path);

  const std::vector<std::string>& candidates() const { return candidates_; }
  size_t size() const { return candidates_.size(); }

 private:
  explicit GuessSet(std::vector<std::string> c) : candidates_(std::move(c)) {}
  std::vector<std::string> candidates_;
};

// {g : bits[hash_bucket(j, g, d)] = 1}.
absl::StatusOr<std::vector<std::string>> CmsDecode(const CmsRecord& record,
                                                   const GuessSet& guesses,
                                                   int64_t d);
bool CmsPlausible(const CmsRecord& record, absl::string_view guess, int64_t d);

// {g : H[l, hash_bucket(j, g, d)] = y}.
absl::StatusOr<std::vector<std::string>> HcmsDecode(const HcmsRecord& record,
                                                    const GuessSet& guesses,
                                                    int64_t d);
bool HcmsPlausible(const HcmsRecord& record, absl::string_view guess,
                   int64_t d);

bool ObhPlausible(const ObhRecord& record, absl::string_view guess);

enum class PrioRule { kFirstBit, kBothBits };

// Returns 0 for X = 1 and 1 for X = 2.
//   kFirstBit: 0 iff y[0] = 1.
//   kBothBits: 0 iff y = (1, 0); (0, 1), (1, 1) and (0, 0) give 1.
absl::StatusOr<int> PrioMembershipTest(const BitVector& y, PrioRule rule);

absl::StatusOr<PrioRule> ParsePrioRule(absl::string_view name);

}  // namespace dpforensics

#endif  // DPFORENSICS_ATTACKS_H_
