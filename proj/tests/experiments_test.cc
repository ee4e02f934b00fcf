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

#include "dpforensics/parallel.h"
#include "gtest/gtest.h"

namespace dpforensics {
namespace {

TEST(RateTest, StandardError) {
  const Rate r{25, 100};
  EXPECT_DOUBLE_EQ(r.value(), 0.25);
  EXPECT_NEAR(r.standard_error(), std::sqrt(0.25 * 0.75 / 100), 1e-15);
  EXPECT_EQ(Rate{}.value(), 0.0);
}

TEST(ExperimentsTest, SerialEqualsParallel) {
  EXPECT_EQ(*PhiLapRates(1.0, 1.0, 2000, 3, Execution::kSerial),
            *PhiLapRates(1.0, 1.0, 2000, 3, Execution::kParallel));
  EXPECT_EQ(*PhiGaussRates(0.03, 1.0, 20, 2000, 3, Execution::kSerial),
            *PhiGaussRates(0.03, 1.0, 20, 2000, 3, Execution::kParallel));
  EXPECT_EQ(SymOheHamming(2.0, 100, 30, 500, 3, Execution::kSerial)->hits,
            SymOheHamming(2.0, 100, 30, 500, 3, Execution::kParallel)->hits);
  EXPECT_EQ(*DzkAttack(1.0, 100, 200, 80, 3, Execution::kSerial),
            *DzkAttack(1.0, 100, 200, 80, 3, Execution::kParallel));
}

TEST(ExperimentsTest, PhiLapFalsePositivesRare) {
  auto c = PhiLapRates(1.0, 1.0, 10000, 1, Execution::kParallel);
  ASSERT_TRUE(c.ok()) << c.status();
  EXPECT_LE(c->fpr(), 0.005);
  EXPECT_GT(c->tpr(), 0.7);
}

TEST(ExperimentsTest, AgeReconstructionContainsTruth) {
  auto r = AgeReconstruction(5, 0.2, 100, 100, 500, 1, Execution::kParallel);
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_LE(r->singleton.hits, r->contains.hits);
  EXPECT_GT(r->contains.value(), 0.9);
}

TEST(ExperimentsTest, SymOheHammingNoiseFree) {
  // Huge epsilon keeps every bit.
  auto r = SymOheHamming(50.0, 1000, 0, 100, 1, Execution::kParallel);
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_EQ(r->hits, 100);
}

TEST(ExperimentsTest, CmsRetentionNearKeepRate) {
  auto r = CmsRetention("x", 4.0, 1024, 65536, 4000, 1, Execution::kParallel);
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_NEAR(r->value(), 0.8808, 0.025);
}

TEST(ExperimentsTest, InvalidArguments) {
  EXPECT_FALSE(PhiLapRates(0.0, 1.0, 10, 1, Execution::kSerial).ok());
  EXPECT_FALSE(SymOheHamming(1.0, 0, 1, 10, 1, Execution::kSerial).ok());
  EXPECT_FALSE(DzkAttack(1.0, 3, 10, 80, 1, Execution::kSerial).ok());
}

}  // namespace
}  // namespace dpforensics
