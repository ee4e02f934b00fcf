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

#ifndef DPFORENSICS_RNG_H_
#define DPFORENSICS_RNG_H_

#include <cstdint>

namespace dpforensics {

// splitmix64 finalizer. Used both to generate draws and to derive child seeds.
constexpr uint64_t Mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic source of raw 32-bit integers.
//
// The generator is splitmix64: the state advances by the golden-ratio Weyl
// increment and each 64-bit output is Mix64(state). NextU32 returns the upper
// 32 bits of one 64-bit output. Streams are single-owner; give every
// concurrent task its own stream via Derive().
class RngStream {
 public:
  static constexpr uint64_t kWeyl = 0x9e3779b97f4a7c15ULL;

  explicit RngStream(uint64_t seed) : seed_(seed), state_(seed) {}

  // Child stream i of a master seed: seed = Mix64(master ^ Mix64(i + kWeyl)).
  static RngStream Derive(uint64_t master_seed, uint64_t index) {
    return RngStream(DeriveSeed(master_seed, index));
  }
  static constexpr uint64_t DeriveSeed(uint64_t master_seed, uint64_t index) {
    return Mix64(master_seed ^ Mix64(index + kWeyl));
  }

  uint64_t NextU64() {
    ++counter_;
    state_ += kWeyl;
    return Mix64(state_);
  }

  uint32_t NextU32() { return static_cast<uint32_t>(NextU64() >> 32); }

  // next_u32 / (2^32 - 1), one binary64 division. Support is exactly 2^32
  // points including 0.0 and 1.0.
  double UniformUnitDouble() { return UnitDoubleFromRaw(NextU32()); }

  // Raw bits reinterpreted as two's complement.
  int32_t SignedInt31() { return SignedFromRaw(NextU32()); }

  // Uniform over [0, n) by rejection on one or more 32-bit draws. n >= 1.
  uint32_t UniformIndex(uint64_t n) {
    const uint64_t range = uint64_t{1} << 32;
    const uint64_t limit = range - range % n;
    for (;;) {
      const uint64_t raw = NextU32();
      if (raw < limit) return static_cast<uint32_t>(raw % n);
    }
  }

  // 53-bit uniform in [0, 1). Used only by the auditor's Monte Carlo, never by
  // the audited mechanisms.
  double Uniform53() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  static double UnitDoubleFromRaw(uint32_t raw) {
    return static_cast<double>(raw) / 4294967295.0;
  }
  static int32_t SignedFromRaw(uint32_t raw) {
    return static_cast<int32_t>(raw);
  }

  uint64_t seed() const { return seed_; }
  uint64_t counter() const { return counter_; }

 private:
  uint64_t seed_;
  uint64_t state_;
  uint64_t counter_ = 0;
};

}  // namespace dpforensics

#endif  // DPFORENSICS_RNG_H_
