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

#include "dpforensics/attacks.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"
#include "absl/strings/strip.h"
#include "dpforensics/gaussian.h"
#include "dpforensics/laplace.h"

namespace dpforensics {
namespace {

struct GaussCentre {
  int64_t v1 = 0;
  int64_t v2 = 0;
  bool degenerate = false;
};

GaussCentre ReconstructCentre(float y1, float y2, double mu, double sigma) {
  const double z1 = (static_cast<double>(y1) - mu) / sigma;
  const double z2 = (static_cast<double>(y2) - mu) / sigma;
  if (z1 == 0.0 && z2 == 0.0) return {0, 0, true};
  const double r = std::exp(-(z1 * z1 + z2 * z2) / 2.0 *
                            (kMarsagliaUnitScale * kMarsagliaUnitScale) /
                            kMarsagliaRadiusScale);
  const bool swap = std::abs(z2) < std::abs(z1);
  const double small = swap ? z2 : z1;
  const double large = swap ? z1 : z2;
  const double ratio = std::abs(small / large);
  int64_t b = static_cast<int64_t>(
      std::sqrt(r * kMarsagliaRadiusScale / (ratio * ratio + 1.0)));
  if (large < 0) b = -b;
  int64_t a = static_cast<int64_t>(std::abs(static_cast<double>(b)) * ratio);
  if (small < 0) a = -a;
  return swap ? GaussCentre{b, a, false} : GaussCentre{a, b, false};
}

inline bool Reproduces(int64_t v1, int64_t v2, float y1, float y2, double mu,
                       double sigma) {
  if (!MarsagliaAccepts(v1, v2)) return false;
  const Float32Pair p = MarsagliaPairUnchecked(v1, v2, mu, sigma);
  return p.y1 == y1 && p.y2 == y2;
}

}  // namespace

bool PhiLap(double y, double mu, double lambda) {
  const double u = LaplaceCdf(y - mu, lambda);
  return mu + LaplaceInverseCdfUnchecked(u, lambda) != y;
}

absl::StatusOr<bool> BoostedLapTest(std::span<const double> samples, double mu,
                                    double lambda) {
  if (samples.empty()) return absl::InvalidArgumentError("no samples");
  for (double y : samples) {
    if (PhiLap(y, mu, lambda)) return true;
  }
  return false;
}

absl::StatusOr<std::vector<int64_t>> ReconstructLaplaceInput(
    std::span<const double> samples, std::span<const int64_t> domain,
    double lambda) {
  if (samples.empty()) return absl::InvalidArgumentError("no samples");
  std::vector<int64_t> feasible;
  for (int64_t mu : domain) {
    bool infeasible = false;
    for (double y : samples) {
      if (PhiLap(y, static_cast<double>(mu), lambda)) {
        infeasible = true;
        break;
      }
    }
    if (!infeasible) feasible.push_back(mu);
  }
  return feasible;
}

bool PhiGauss(float y1, float y2, double mu, double sigma2, int k) {
  const double sigma = std::sqrt(sigma2);
  const GaussCentre c = ReconstructCentre(y1, y2, mu, sigma);
  if (c.degenerate) return true;
  if (Reproduces(c.v1, c.v2, y1, y2, mu, sigma)) return false;
  for (int64_t r = 1; r <= k; ++r) {
    for (int64_t t = -r; t < r; ++t) {
      if (Reproduces(c.v1 + t, c.v2 - r, y1, y2, mu, sigma) ||
          Reproduces(c.v1 + r, c.v2 + t, y1, y2, mu, sigma) ||
          Reproduces(c.v1 - t, c.v2 + r, y1, y2, mu, sigma) ||
          Reproduces(c.v1 - r, c.v2 - t, y1, y2, mu, sigma)) {
        return false;
      }
    }
  }
  return true;
}

bool PhiGaussReference(float y1, float y2, double mu, double sigma2, int k) {
  const double sigma = std::sqrt(sigma2);
  const GaussCentre c = ReconstructCentre(y1, y2, mu, sigma);
  if (c.degenerate) return true;
  bool any = false;
  for (int64_t a = c.v1 - k; a <= c.v1 + k; ++a) {
    for (int64_t b = c.v2 - k; b <= c.v2 + k; ++b) {
      any |= Reproduces(a, b, y1, y2, mu, sigma);
    }
  }
  return !any;
}

absl::StatusOr<bool> BoostedGaussTest(std::span<const float> samples,
                                      double mu, double sigma2, int k) {
  if (samples.empty() || samples.size() % 2 != 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("need an even, non-empty sample count, got ",
                     samples.size()));
  }
  for (size_t i = 0; i < samples.size(); i += 2) {
    if (PhiGauss(samples[i], samples[i + 1], mu, sigma2, k)) return true;
  }
  return false;
}

absl::StatusOr<GuessSet> GuessSet::Create(std::vector<std::string> candidates) {
  if (candidates.empty()) return absl::InvalidArgumentError("empty guess set");
  std::unordered_set<std::string> seen;
  for (const std::string& c : candidates) {
    if (!seen.insert(c).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate guess '", c, "'"));
    }
  }
  return GuessSet(std::move(candidates));
}

absl::StatusOr<GuessSet> GuessSet::FromText(absl::string_view text) {
  std::vector<std::string> out;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    absl::ConsumeSuffix(&line, "\r");
    if (line.empty()) continue;
    out.emplace_back(line);
  }
  return Create(std::move(out));
}

absl::StatusOr<GuessSet> GuessSet::FromFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream ss;
  ss << in.rdbuf();
  return FromText(ss.str());
}

bool CmsPlausible(const CmsRecord& record, absl::string_view guess, int64_t d) {
  return record.bits[HashBucket(record.hash_index, guess, d)] == 1;
}

absl::StatusOr<std::vector<std::string>> CmsDecode(const CmsRecord& record,
                                                   const GuessSet& guesses,
                                                   int64_t d) {
  if (d < 1 || static_cast<int64_t>(record.bits.size()) != d) {
    return absl::InvalidArgumentError(absl::StrCat(
        "record has ", record.bits.size(), " bits, expected d=", d));
  }
  std::vector<std::string> out;
  for (const std::string& g : guesses.candidates()) {
    if (CmsPlausible(record, g, d)) out.push_back(g);
  }
  return out;
}

bool HcmsPlausible(const HcmsRecord& record, absl::string_view guess,
                   int64_t d) {
  const uint64_t h = HashBucket(record.hash_index, guess, d);
  return HadamardEntry(record.bit_index, h) == record.y;
}

absl::StatusOr<std::vector<std::string>> HcmsDecode(const HcmsRecord& record,
                                                    const GuessSet& guesses,
                                                    int64_t d) {
  if (!IsPowerOfTwo(d)) {
    return absl::InvalidArgumentError(
        absl::StrCat("d must be a power of two, got ", d));
  }
  if (record.bit_index >= static_cast<uint64_t>(d)) {
    return absl::InvalidArgumentError("bit index out of range");
  }
  std::vector<std::string> out;
  for (const std::string& g : guesses.candidates()) {
    if (HcmsPlausible(record, g, d)) out.push_back(g);
  }
  return out;
}

bool ObhPlausible(const ObhRecord& record, absl::string_view guess) {
  absl::StatusOr<int> bit = ObhBit(guess, record.bit_index);
  return bit.ok() && *bit == record.y;
}

absl::StatusOr<int> PrioMembershipTest(const BitVector& y, PrioRule rule) {
  if (y.size() != 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("ShapeMismatch: expected 2 bits, got ", y.size()));
  }
  switch (rule) {
    case PrioRule::kFirstBit:
      return y[0] == 1 ? 0 : 1;
    case PrioRule::kBothBits:
      return (y[0] == 1 && y[1] == 0) ? 0 : 1;
  }
  return absl::InternalError("unknown rule");
}

absl::StatusOr<PrioRule> ParsePrioRule(absl::string_view name) {
  if (name == "first_bit") return PrioRule::kFirstBit;
  if (name == "both_bits") return PrioRule::kBothBits;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown prio rule '", name, "'"));
}

}  // namespace dpforensics
