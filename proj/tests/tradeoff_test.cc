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

#include "dpforensics/tradeoff.h"

#include <cmath>

#include "absl/status/status.h"
#include "dpforensics/normal.h"
#include "gtest/gtest.h"

namespace dpforensics {
namespace {

TEST(NormalTest, CdfOracles) {
  EXPECT_NEAR(NormalCdf(-1.0), 0.15865525393145707, 1e-15);
  EXPECT_NEAR(NormalCdf(0.0), 0.5, 1e-16);
  EXPECT_NEAR(NormalCdf(-10.0), 7.619853024160527e-24, 1e-36);
}

TEST(NormalTest, QuantileInvertsCdf) {
  for (double p : {1e-300, 1e-12, 1e-5, 0.02, 0.3, 0.5, 0.9, 0.999999}) {
    EXPECT_NEAR(NormalCdf(NormalQuantile(p)) / p, 1.0, 1e-12) << p;
  }
  EXPECT_EQ(NormalQuantile(0.0), -INFINITY);
  EXPECT_EQ(NormalQuantile(1.0), INFINITY);
}

TEST(FEpsDeltaTest, Oracles) {
  EXPECT_NEAR(FEpsDelta(1.0, 0.0, 0.2), 1.0 - 0.2 * std::exp(1.0), 1e-15);
  EXPECT_NEAR(FEpsDelta(1.0, 0.0, 0.2), 0.45634, 1e-5);
  EXPECT_DOUBLE_EQ(FEpsDelta(0.0, 0.0, 0.3), 0.7);
  EXPECT_DOUBLE_EQ(FEpsDelta(2.0, 0.1, 0.0), 0.9);
}

TEST(FGaussTest, Oracles) {
  EXPECT_NEAR(FGauss(1.0, 0.5), 0.15865525, 1e-8);
  EXPECT_NEAR(FGauss(0.0, 0.3), 0.7, 1e-12);
  EXPECT_EQ(FGauss(1.0, 1.0), 0.0);
  EXPECT_EQ(FGauss(1.0, 0.0), 1.0);
}

TEST(FLaplaceTest, Oracles) {
  EXPECT_NEAR(FLaplace(1.0, 0.5), std::exp(-1.0) / 2, 1e-15);
  EXPECT_NEAR(FLaplace(1.0, 0.5), 0.18394, 1e-5);
  EXPECT_NEAR(FLaplace(1.0, 0.1), 0.72817, 1e-5);
  EXPECT_NEAR(FLaplace(0.0, 0.4), 0.6, 1e-15);
}

TEST(TradeoffTest, FamilyMembersAreValidCurves) {
  for (Family fam : {Family::kEpsDelta, Family::kGaussian, Family::kLaplace}) {
    for (double theta : {0.0, 0.5, 2.0, 6.0}) {
      const TradeoffCurve f{fam, theta, 1e-3};
      double prev = f(0.0);
      for (int i = 1; i <= 1000; ++i) {
        const double a = i / 1000.0;
        const double v = f(a);
        EXPECT_LE(v, 1.0 - a + 1e-12);
        EXPECT_LE(v, prev + 1e-12);
        prev = v;
        if (i < 1000) {
          const double lo = f(a - 1e-3);
          const double hi = f(a + 1e-3);
          EXPECT_LE(v, 0.5 * (lo + hi) + 1e-12);
        }
      }
    }
  }
}

TEST(TradeoffTest, FamilyNames) {
  for (Family fam : {Family::kEpsDelta, Family::kGaussian, Family::kLaplace}) {
    EXPECT_EQ(*ParseFamily(FamilyName(fam)), fam);
  }
  EXPECT_FALSE(ParseFamily("renyi").ok());
  EXPECT_EQ(ThetaMax(Family::kEpsDelta), 64.0);
  EXPECT_EQ(ThetaMax(Family::kGaussian), 32.0);
}

TEST(DeltaOfFTest, ConjugacyRoundTrip) {
  for (int i = 0; i <= 16; ++i) {
    const double eps = 0.5 * i;
    for (double delta : {0.0, 1e-5, 1e-2}) {
      const TradeoffCurve f{Family::kEpsDelta, eps, delta};
      EXPECT_NEAR(DeltaOfF(f, eps), delta, 1e-6) << eps << " " << delta;
    }
  }
}

TEST(DeltaOfFTest, IdentityCurveHasZeroDelta) {
  const TradeoffCurve f{Family::kGaussian, 0.0, 0.0};
  for (double eps : {0.0, 1.0, 5.0}) EXPECT_NEAR(DeltaOfF(f, eps), 0.0, 1e-12);
}

TEST(DeltaOfFTest, GaussianTotalVariation) {
  for (double mu : {0.1, 1.0, 3.0}) {
    const TradeoffCurve f{Family::kGaussian, mu, 0.0};
    EXPECT_NEAR(DeltaOfF(f, 0.0), 2 * NormalCdf(mu / 2) - 1, 1e-9) << mu;
  }
}

TEST(DeltaOfFTest, DominanceTransfer) {
  const TradeoffCurve strong{Family::kLaplace, 1.0, 0.0};
  const TradeoffCurve weak{Family::kLaplace, 2.0, 0.0};
  for (int i = 0; i <= 1000; ++i) {
    ASSERT_GE(strong(i / 1000.0), weak(i / 1000.0));
  }
  for (double eps = 0.0; eps <= 4.0; eps += 0.25) {
    EXPECT_LE(DeltaOfF(strong, eps), DeltaOfF(weak, eps) + 1e-12);
  }
}

TEST(EpsOfFTest, Oracles) {
  const TradeoffCurve id{Family::kGaussian, 0.0, 0.0};
  EXPECT_EQ(*EpsOfF(id, 1e-5), 0.0);
  const TradeoffCurve eps3{Family::kEpsDelta, 3.0, 0.0};
  EXPECT_NEAR(*EpsOfF(eps3, 0.0), 3.0, 1e-6);
  const TradeoffCurve gauss{Family::kGaussian, 2.9, 0.0};
  EXPECT_NEAR(*EpsOfF(gauss, 1e-5), 15.6, 0.5);
}

TEST(EpsOfFTest, LaplaceShiftIsPureDp) {
  const TradeoffCurve lap{Family::kLaplace, 1.5, 0.0};
  EXPECT_NEAR(*EpsOfF(lap, 0.0), 1.5, 1e-5);
}

TEST(EpsOfFTest, UnboundedAndInvalid) {
  const TradeoffCurve huge{Family::kGaussian, 32.0, 0.0};
  EXPECT_EQ(EpsOfF(huge, 1e-12).status().code(), absl::StatusCode::kOutOfRange);
  EXPECT_FALSE(EpsOfF(huge, 1.5).ok());
}

}  // namespace
}  // namespace dpforensics
