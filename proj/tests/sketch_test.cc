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

#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "dpforensics/rng.h"
#include "gtest/gtest.h"

namespace dpforensics {
namespace {

TEST(KeepProbTest, Oracles) {
  EXPECT_EQ(KeepProb(1.0), 0.7310585786300049);
  EXPECT_DOUBLE_EQ(KeepProb(0.0), 0.5);
}

TEST(RandomizedResponseTest, KeepOneNeverFlips) {
  RngStream stream(1);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_EQ(RandomizedResponse(1, 1.0, stream), 1);
    EXPECT_EQ(RandomizedResponse(0, 1.0, stream), 0);
  }
}

TEST(RandomizedResponseTest, FlipRate) {
  RngStream stream(2);
  const double keep = KeepProb(1.0);
  int kept = 0;
  constexpr int kDraws = 200000;
  for (int i = 0; i < kDraws; ++i) kept += RandomizedResponse(1, keep, stream);
  const double se = std::sqrt(keep * (1 - keep) / kDraws);
  EXPECT_NEAR(static_cast<double>(kept) / kDraws, keep, 4 * se);
}

TEST(SketchConfigTest, Validation) {
  EXPECT_FALSE(SketchConfig::Create(0.0, 4).ok());
  EXPECT_FALSE(SketchConfig::Create(1.0, 0).ok());
  EXPECT_FALSE(SketchConfig::Create(1.0, 4, 0).ok());
  EXPECT_TRUE(SketchConfig::Create(1.0, 4, 2).ok());
}

TEST(SymOheTest, RejectsOutOfDomain) {
  RngStream stream(1);
  const SketchConfig config{1.0, 4, 1};
  EXPECT_FALSE(SymOhe(0, config, stream).ok());
  EXPECT_FALSE(SymOhe(5, config, stream).ok());
}

// Exhaustive likelihood ratios over {0,1}^d for the per-bit flip model.
double OutputProb(const BitVector& y, int64_t x, double keep) {
  double p = 1.0;
  for (size_t i = 0; i < y.size(); ++i) {
    const int truth = (static_cast<int64_t>(i) == x - 1) ? 1 : 0;
    p *= (y[i] == truth) ? keep : 1.0 - keep;
  }
  return p;
}

TEST(SymOheTest, ReplacementAndDeletionRatios) {
  const double eps = 1.0;
  const double keep = KeepProb(eps);
  for (int64_t d = 2; d <= 8; ++d) {
    double max_replace = 0.0;
    double max_delete = 0.0;
    for (uint32_t mask = 0; mask < (1u << d); ++mask) {
      BitVector y(d);
      for (int64_t i = 0; i < d; ++i) y[i] = (mask >> i) & 1;
      for (int64_t x = 1; x <= d; ++x) {
        const double px = OutputProb(y, x, keep);
        max_delete = std::max(max_delete, px / OutputProb(y, 0, keep));
        max_delete = std::max(max_delete, OutputProb(y, 0, keep) / px);
        for (int64_t x2 = 1; x2 <= d; ++x2) {
          max_replace = std::max(max_replace, px / OutputProb(y, x2, keep));
        }
      }
    }
    EXPECT_NEAR(std::log(max_replace), 2 * eps, 1e-12) << "d=" << d;
    EXPECT_NEAR(std::log(max_delete), eps, 1e-12) << "d=" << d;
  }
}

TEST(SymOheTest, EmpiricalOutputMatchesModel) {
  const SketchConfig config{1.0, 3, 1};
  const double keep = KeepProb(1.0);
  int counts[8] = {};
  constexpr int kDraws = 80000;
  for (int t = 0; t < kDraws; ++t) {
    RngStream stream = RngStream::Derive(5, t);
    const BitVector y = *SymOhe(2, config, stream);
    ++counts[y[0] | (y[1] << 1) | (y[2] << 2)];
  }
  for (uint32_t mask = 0; mask < 8; ++mask) {
    const BitVector y = {static_cast<uint8_t>(mask & 1),
                         static_cast<uint8_t>((mask >> 1) & 1),
                         static_cast<uint8_t>((mask >> 2) & 1)};
    const double p = OutputProb(y, 2, keep);
    const double se = std::sqrt(p * (1 - p) / kDraws);
    EXPECT_NEAR(counts[mask] / static_cast<double>(kDraws), p, 4 * se);
  }
}

TEST(HadamardEntryTest, MatchesSylvesterConstruction) {
  std::vector<std::vector<int>> h = {{1}};
  for (int m = 0; m < 6; ++m) {
    const size_t n = h.size();
    std::vector<std::vector<int>> next(2 * n, std::vector<int>(2 * n));
    for (size_t r = 0; r < n; ++r) {
      for (size_t c = 0; c < n; ++c) {
        next[r][c] = h[r][c];
        next[r][c + n] = h[r][c];
        next[r + n][c] = h[r][c];
        next[r + n][c + n] = -h[r][c];
      }
    }
    h = std::move(next);
  }
  for (size_t r = 0; r < h.size(); ++r) {
    for (size_t c = 0; c < h.size(); ++c) {
      ASSERT_EQ(HadamardEntry(r, c), h[r][c]) << r << "," << c;
    }
  }
}

TEST(HashBucketTest, DeterministicAndInRange) {
  EXPECT_EQ(HashBucket(3, "abc", 1024), HashBucket(3, "abc", 1024));
  std::set<uint64_t> seen;
  for (uint64_t j = 0; j < 200; ++j) {
    const uint64_t b = HashBucket(j, "\xF0\x9F\x91\x89", 1024);
    ASSERT_LT(b, 1024u);
    seen.insert(b);
  }
  EXPECT_GT(seen.size(), 150u);
}

TEST(IsPowerOfTwoTest, Basic) {
  EXPECT_TRUE(IsPowerOfTwo(1));
  EXPECT_TRUE(IsPowerOfTwo(1024));
  EXPECT_FALSE(IsPowerOfTwo(0));
  EXPECT_FALSE(IsPowerOfTwo(12));
}

TEST(CmsClientTest, ShapeAndIndexRange) {
  const SketchConfig config{4.0, 1024, 65536};
  RngStream stream(1);
  auto rec = CmsClient("x", config, stream);
  ASSERT_TRUE(rec.ok()) << rec.status();
  EXPECT_EQ(rec->bits.size(), 1024u);
  EXPECT_LT(rec->hash_index, 65536u);
}

TEST(CmsClientTest, HashedBitKeptAtHalfEpsilon) {
  const SketchConfig config{4.0, 64, 16};
  int set = 0;
  constexpr int kDraws = 20000;
  for (int t = 0; t < kDraws; ++t) {
    RngStream stream = RngStream::Derive(9, t);
    const CmsRecord rec = *CmsClient("x", config, stream);
    set += rec.bits[HashBucket(rec.hash_index, "x", 64)];
  }
  const double keep = KeepProb(2.0);
  EXPECT_NEAR(static_cast<double>(set) / kDraws, keep,
              4 * std::sqrt(keep * (1 - keep) / kDraws));
}

TEST(HcmsClientTest, RequiresPowerOfTwo) {
  RngStream stream(1);
  EXPECT_FALSE(HcmsClient("x", SketchConfig{1.0, 12, 4}, stream).ok());
  auto rec = HcmsClient("x", SketchConfig{1.0, 16, 4}, stream);
  ASSERT_TRUE(rec.ok()) << rec.status();
  EXPECT_TRUE(rec->y == 1 || rec->y == -1);
  EXPECT_LT(rec->bit_index, 16u);
  EXPECT_LT(rec->hash_index, 4u);
}

TEST(ObhTest, BitIsDeterministicAndBounded) {
  EXPECT_EQ(*ObhBit("a", 5), *ObhBit("a", 5));
  EXPECT_FALSE(ObhBit("a", kObhMaxBits).ok());
  EXPECT_FALSE(ObhBit("a", -1).ok());
  RngStream stream(1);
  EXPECT_FALSE(OneBitHistogram("a", SketchConfig{1.0, 129, 1}, stream).ok());
}

TEST(ObhTest, ReportedBitAgreesAtKeepRate) {
  const SketchConfig config{1.0, 128, 1};
  int agree = 0;
  constexpr int kDraws = 20000;
  for (int t = 0; t < kDraws; ++t) {
    RngStream stream = RngStream::Derive(3, t);
    const ObhRecord rec = *OneBitHistogram("a", config, stream);
    agree += rec.y == *ObhBit("a", rec.bit_index);
  }
  const double keep = KeepProb(1.0);
  EXPECT_NEAR(static_cast<double>(agree) / kDraws, keep,
              4 * std::sqrt(keep * (1 - keep) / kDraws));
}

TEST(HammingDistanceTest, Counts) {
  EXPECT_EQ(HammingDistance({0, 1, 1, 0}, {1, 1, 0, 0}), 2);
}

}  // namespace
}  // namespace dpforensics
