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
#include <vector>

#include "dpforensics/rng.h"
#include "gtest/gtest.h"

namespace dpforensics {
namespace {

TEST(IsPrimeTest, Basic) {
  EXPECT_TRUE(IsPrime(2));
  EXPECT_TRUE(IsPrime(7));
  EXPECT_TRUE(IsPrime(kDefaultFieldPrime));
  EXPECT_FALSE(IsPrime(1));
  EXPECT_FALSE(IsPrime(91));
}

TEST(FieldShareTest, ReconstructsPayload) {
  RngStream stream(1);
  const std::vector<uint64_t> payload = {0, 1, 5, kDefaultFieldPrime - 1};
  auto bundle = FieldShare(payload, kDefaultFieldPrime, stream);
  ASSERT_TRUE(bundle.ok()) << bundle.status();
  EXPECT_EQ(*FieldReconstruct(*bundle), payload);
}

TEST(FieldShareTest, RejectsPayloadOutsideField) {
  RngStream stream(1);
  const std::vector<uint64_t> payload = {7};
  EXPECT_FALSE(FieldShare(payload, 7, stream).ok());
}

// Pearson chi-square with p - 1 = 6 degrees of freedom; 22.46 is the 0.999
// quantile.
double ChiSquare(const std::vector<int>& counts, double expected) {
  double chi = 0.0;
  for (int c : counts) chi += (c - expected) * (c - expected) / expected;
  return chi;
}

TEST(FieldShareTest, EachShareIsUniform) {
  constexpr uint64_t kPrime = 7;
  constexpr int kDraws = 70000;
  std::vector<int> leader(kPrime, 0);
  std::vector<int> helper(kPrime, 0);
  RngStream stream(42);
  const std::vector<uint64_t> payload = {3};
  for (int i = 0; i < kDraws; ++i) {
    const FieldShareBundle b = *FieldShare(payload, kPrime, stream);
    ++leader[b.leader_share[0]];
    ++helper[b.helper_share[0]];
  }
  EXPECT_LT(ChiSquare(leader, kDraws / 7.0), 22.46);
  EXPECT_LT(ChiSquare(helper, kDraws / 7.0), 22.46);
}

TEST(SecAggConfigTest, Validation) {
  SecAggConfig config;
  config.mode = SecAggMode::kPrioSymOhe;
  config.prime = 91;
  EXPECT_FALSE(config.Validate().ok());
  config.prime = kDefaultFieldPrime;
  config.d = 0;
  EXPECT_FALSE(config.Validate().ok());
  config.d = 2;
  EXPECT_TRUE(config.Validate().ok());
}

TEST(SecAggModeTest, NamesRoundTrip) {
  for (SecAggMode m : {SecAggMode::kPrioSymOhe, SecAggMode::kPrioPlusPlus,
                       SecAggMode::kDpDisabled}) {
    EXPECT_EQ(*ParseSecAggMode(SecAggModeName(m)), m);
  }
  EXPECT_FALSE(ParseSecAggMode("prio").ok());
}

TEST(GaussSecretShareTest, ReconstructionErrorWithinRounding) {
  RngStream stream(3);
  std::vector<double> y(1000);
  for (size_t i = 0; i < y.size(); ++i) y[i] = std::sin(i) * 3.0;
  auto bundle = GaussSecretShare(y, 1.0, stream);
  ASSERT_TRUE(bundle.ok()) << bundle.status();
  const std::vector<double> v = ExpandHelperShare(bundle->helper_seed,
                                                  y.size(), 1.0);
  const std::vector<double> rec = *GaussReconstruct(*bundle);
  for (size_t i = 0; i < y.size(); ++i) {
    const double bound = 2.0 * std::ldexp(std::abs(y[i]) + std::abs(v[i]), -52);
    EXPECT_LE(std::abs(rec[i] - y[i]), bound) << i;
  }
}

TEST(GaussSecretShareTest, HelperShareIsBinary32Gaussian) {
  const std::vector<double> v = ExpandHelperShare(11, 20000, 2.0);
  double s = 0.0;
  double ss = 0.0;
  for (double x : v) {
    EXPECT_EQ(x, static_cast<double>(static_cast<float>(x)));
    s += x;
    ss += x * x;
  }
  EXPECT_NEAR(s / v.size(), 0.0, 0.06);
  EXPECT_NEAR(ss / v.size(), 4.0, 0.2);
}

TEST(SimulateTest, DpDisabledRecoversEveryClient) {
  for (int64_t d : {1, 2, 8, 64, 1024}) {
    SecAggConfig config;
    config.mode = SecAggMode::kDpDisabled;
    config.d = d;
    config.n_clients = 100;
    auto result = Simulate(config, 1);
    ASSERT_TRUE(result.ok()) << result.status();
    ASSERT_EQ(result->exact_recovery.size(), 100u);
    for (bool ok : result->exact_recovery) EXPECT_TRUE(ok) << "d=" << d;
    std::vector<uint64_t> hist(d, 0);
    for (int64_t x : result->inputs) ++hist[x - 1];
    EXPECT_EQ(result->combined_aggregate, hist);
  }
}

TEST(SimulateTest, ExplicitInputsAndRoleViews) {
  SecAggConfig config;
  config.mode = SecAggMode::kDpDisabled;
  config.d = 3;
  config.n_clients = 3;
  const std::vector<int64_t> inputs = {1, 3, 3};
  auto result = Simulate(config, 9, inputs);
  ASSERT_TRUE(result.ok()) << result.status();
  EXPECT_EQ(result->inputs, inputs);
  EXPECT_EQ(result->combined_aggregate, (std::vector<uint64_t>{1, 0, 2}));
  for (size_t i = 0; i < 3; ++i) {
    EXPECT_EQ((result->leader_aggregate[i] + result->helper_aggregate[i]) %
                  config.prime,
              result->combined_aggregate[i]);
  }
}

TEST(SimulateTest, PrioPlusPlusCombinedSum) {
  SecAggConfig config;
  config.mode = SecAggMode::kPrioPlusPlus;
  config.d = 4;
  config.n_clients = 5;
  std::vector<std::vector<double>> inputs(5, std::vector<double>(4, 0.1));
  auto result = Simulate(config, 2, {}, inputs);
  ASSERT_TRUE(result.ok()) << result.status();
  ASSERT_EQ(result->combined_sum.size(), 4u);
  for (size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(result->combined_sum[i],
                result->leader_sum[i] + result->helper_sum[i], 1e-9);
  }
}

TEST(SimulateTest, ValidityHookRejects) {
  SecAggConfig config;
  config.mode = SecAggMode::kPrioSymOhe;
  config.d = 2;
  config.n_clients = 4;
  auto result = Simulate(config, 1, {}, {},
                         [](const FieldShareBundle&) { return false; });
  ASSERT_TRUE(result.ok()) << result.status();
  for (bool a : result->accepted) EXPECT_FALSE(a);
}

}  // namespace
}  // namespace dpforensics
