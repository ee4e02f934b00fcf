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

// Local randomizers for frequency estimation: symmetric one-hot encoding,
// Count Median Sketch and Hadamard CMS clients, and OneBitHistogram.
//
// Byte encodings (self-consistent; the decoders in attacks.h reuse them):
//   hash_bucket(j, x, d) = BE64(SHA-256(BE64(j) || x)[0..8]) mod d
//   obh_bit(x, l)        = bit (7 - l % 8) of byte l / 8 of
//                          AES-128_{SHA-256(x)[0..16]}(BE128(l))

#ifndef DPFORENSICS_SKETCH_H_
#define DPFORENSICS_SKETCH_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dpforensics/rng.h"

namespace dpforensics {

// One byte per bit, values 0 or 1.
using BitVector = std::vector<uint8_t>;

inline constexpr int kObhMaxBits = 128;

struct SketchConfig {
  double epsilon = 1.0;
  int64_t bit_count = 1;   // d
  int64_t hash_count = 1;  // k

  static absl::StatusOr<SketchConfig> Create(double epsilon, int64_t bit_count,
                                             int64_t hash_count = 1);
};

struct CmsRecord {
  BitVector bits;
  uint32_t hash_index = 0;
};

struct HcmsRecord {
  int y = 1;  // -1 or +1
  uint32_t hash_index = 0;
  uint32_t bit_index = 0;
};

struct ObhRecord {
  int y = 0;
  uint32_t bit_index = 0;
};

// e^eps / (e^eps + 1).
double KeepProb(double epsilon);

// Returns `bit` with probability keep, else its complement. Draws one
// UniformUnitDouble and keeps iff u < keep; keep >= 1 never flips.
int RandomizedResponse(int bit, double keep, RngStream& stream);

// Alg. "symmetric one-hot": x in [1, d].
absl::StatusOr<BitVector> SymOhe(int64_t x, const SketchConfig& config,
                                 RngStream& stream);

uint64_t HashBucket(uint64_t j, absl::string_view x, uint64_t d);

// (-1)^popcount(l & h).
inline int HadamardEntry(uint64_t l, uint64_t h) {
  return (__builtin_popcountll(l & h) & 1) ? -1 : 1;
}

bool IsPowerOfTwo(int64_t d);

// Per-bit keep probability uses epsilon / 2.
absl::StatusOr<CmsRecord> CmsClient(absl::string_view x,
                                    const SketchConfig& config,
                                    RngStream& stream);

absl::StatusOr<HcmsRecord> HcmsClient(absl::string_view x,
                                      const SketchConfig& config,
                                      RngStream& stream);

absl::StatusOr<int> ObhBit(absl::string_view x, int64_t l);

absl::StatusOr<ObhRecord> OneBitHistogram(absl::string_view x,
                                          const SketchConfig& config,
                                          RngStream& stream);

int HammingDistance(const BitVector& a, const BitVector& b);

}  // namespace dpforensics

#endif  // DPFORENSICS_SKETCH_H_
