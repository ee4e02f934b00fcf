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

#include "dpforensics/sketch.h"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"

namespace dpforensics {
namespace {

struct DigestCtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

std::array<uint8_t, 32> Sha256(std::initializer_list<absl::string_view> parts) {
  std::unique_ptr<EVP_MD_CTX, DigestCtxDeleter> ctx(EVP_MD_CTX_new());
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  for (absl::string_view p : parts) {
    EVP_DigestUpdate(ctx.get(), p.data(), p.size());
  }
  std::array<uint8_t, 32> digest{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest.data(), &len);
  return digest;
}

struct CipherCtxDeleter {
  void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
};

std::array<uint8_t, 16> Aes128EncryptBlock(const uint8_t* key,
                                           const std::array<uint8_t, 16>& in) {
  std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter> ctx(EVP_CIPHER_CTX_new());
  std::array<uint8_t, 16> out{};
  int len = 0;
  EVP_EncryptInit_ex(ctx.get(), EVP_aes_128_ecb(), nullptr, key, nullptr);
  EVP_CIPHER_CTX_set_padding(ctx.get(), 0);
  EVP_EncryptUpdate(ctx.get(), out.data(), &len, in.data(), 16);
  return out;
}

}  // namespace

absl::StatusOr<SketchConfig> SketchConfig::Create(double epsilon,
                                                  int64_t bit_count,
                                                  int64_t hash_count) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be finite and positive, got ", epsilon));
  }
  if (bit_count < 1) {
    return absl::InvalidArgumentError("bit count d must be >= 1");
  }
  if (hash_count < 1 || hash_count > UINT32_MAX) {
    return absl::InvalidArgumentError("hash count k must be in [1, 2^32)");
  }
  return SketchConfig{epsilon, bit_count, hash_count};
}

double KeepProb(double epsilon) {
  const double e = std::exp(epsilon);
  return e / (e + 1.0);
}

int RandomizedResponse(int bit, double keep, RngStream& stream) {
  const double u = stream.UniformUnitDouble();
  if (u < keep || keep >= 1.0) return bit;
  return 1 - bit;
}

absl::StatusOr<BitVector> SymOhe(int64_t x, const SketchConfig& config,
                                 RngStream& stream) {
  if (x < 1 || x > config.bit_count) {
    return absl::OutOfRangeError(absl::StrCat(
        "OutOfDomain: x=", x, " not in [1, ", config.bit_count, "]"));
  }
  const double keep = KeepProb(config.epsilon);
  BitVector y(config.bit_count);
  for (int64_t i = 0; i < config.bit_count; ++i) {
    const int v = (i == x - 1) ? 1 : 0;
    y[i] = static_cast<uint8_t>(RandomizedResponse(v, keep, stream));
  }
  return y;
}

uint64_t HashBucket(uint64_t j, absl::string_view x, uint64_t d) {
  char prefix[8];
  for (int b = 0; b < 8; ++b) prefix[b] = static_cast<char>(j >> (56 - 8 * b));
  const auto digest = Sha256({absl::string_view(prefix, 8), x});
  uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v = (v << 8) | digest[b];
  return v % d;
}

bool IsPowerOfTwo(int64_t d) { return d > 0 && (d & (d - 1)) == 0; }

absl::StatusOr<CmsRecord> CmsClient(absl::string_view x,
                                    const SketchConfig& config,
                                    RngStream& stream) {
  CmsRecord record;
  record.hash_index = stream.UniformIndex(config.hash_count);
  const uint64_t bucket = HashBucket(record.hash_index, x, config.bit_count);
  const double keep = KeepProb(config.epsilon / 2.0);
  record.bits.resize(config.bit_count);
  for (int64_t i = 0; i < config.bit_count; ++i) {
    const int v = (static_cast<uint64_t>(i) == bucket) ? 1 : 0;
    record.bits[i] = static_cast<uint8_t>(RandomizedResponse(v, keep, stream));
  }
  return record;
}

absl::StatusOr<HcmsRecord> HcmsClient(absl::string_view x,
                                      const SketchConfig& config,
                                      RngStream& stream) {
  if (!IsPowerOfTwo(config.bit_count)) {
    return absl::InvalidArgumentError(
        absl::StrCat("HCMS needs d a power of two, got ", config.bit_count));
  }
  HcmsRecord record;
  record.hash_index = stream.UniformIndex(config.hash_count);
  const uint64_t h = HashBucket(record.hash_index, x, config.bit_count);
  record.bit_index = stream.UniformIndex(config.bit_count);
  const int u = HadamardEntry(record.bit_index, h);
  // Randomized response on the sign, in {0,1} form.
  const int kept = RandomizedResponse(u > 0 ? 1 : 0, KeepProb(config.epsilon),
                                      stream);
  record.y = kept ? 1 : -1;
  return record;
}

absl::StatusOr<int> ObhBit(absl::string_view x, int64_t l) {
  if (l < 0 || l >= kObhMaxBits) {
    return absl::OutOfRangeError(
        absl::StrCat("OutOfDomain: bit index ", l, " not in [0, 128)"));
  }
  const auto key = Sha256({x});
  std::array<uint8_t, 16> block{};
  for (int b = 0; b < 8; ++b) {
    block[15 - b] = static_cast<uint8_t>(static_cast<uint64_t>(l) >> (8 * b));
  }
  const auto v = Aes128EncryptBlock(key.data(), block);
  return (v[l / 8] >> (7 - l % 8)) & 1;
}

absl::StatusOr<ObhRecord> OneBitHistogram(absl::string_view x,
                                          const SketchConfig& config,
                                          RngStream& stream) {
  if (config.bit_count > kObhMaxBits) {
    return absl::OutOfRangeError(absl::StrCat(
        "OutOfDomain: OneBitHistogram needs d <= 128, got ", config.bit_count));
  }
  ObhRecord record;
  record.bit_index = stream.UniformIndex(config.bit_count);
  absl::StatusOr<int> v = ObhBit(x, record.bit_index);
  if (!v.ok()) return v.status();
  record.y = RandomizedResponse(*v, KeepProb(config.epsilon), stream);
  return record;
}

int HammingDistance(const BitVector& a, const BitVector& b) {
  int dist = 0;
  const size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) dist += (a[i] != b[i]);
  return dist + static_cast<int>(std::max(a.size(), b.size()) - n);
}

}  // namespace dpforensics
