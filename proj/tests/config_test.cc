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

#include "dpforensics/config.h"

#include <fstream>
#include <sstream>
#include <string>

#include "absl/status/status.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace dpforensics {
namespace {

using ::testing::HasSubstr;
using ::testing::StartsWith;

std::string ReadConfig(const std::string& name) {
  std::ifstream in(std::string(DPF_SOURCE_DIR) + "/configs/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string Message(const absl::Status& s) { return std::string(s.message()); }

TEST(ParseAuditConfigTest, BundledAuditsParse) {
  for (const char* name : {"fig4.json", "fig5.json", "fig6.json", "cms.json",
                           "hcms.json", "obh.json", "dzk.json"}) {
    auto c = ParseAuditConfig(ReadConfig(name));
    ASSERT_TRUE(c.ok()) << name << ": " << c.status();
    EXPECT_TRUE(c->has_seed);
    EXPECT_TRUE(BuildMechanism(c->mechanism).ok()) << name;
  }
}

TEST(ParseAuditConfigTest, Fig4Fields) {
  auto c = ParseAuditConfig(ReadConfig("fig4.json"));
  ASSERT_TRUE(c.ok());
  EXPECT_EQ(c->mechanism.name, "laplace");
  EXPECT_EQ(c->attack.name, "phi_lap");
  EXPECT_EQ(c->options.n, 1000);
  EXPECT_EQ(c->options.family, Family::kLaplace);
  EXPECT_EQ(std::get<double>(c->x1), 1.0);
}

TEST(ParseAuditConfigTest, SyntaxErrorHasLine) {
  auto c = ParseAuditConfig("{\n  \"name\": \"x\",\n  oops\n}");
  ASSERT_FALSE(c.ok());
  EXPECT_THAT(Message(c.status()), StartsWith("line 3:"));
}

TEST(ParseAuditConfigTest, BadValueNamesLine) {
  const std::string text =
      "{\n"
      "  \"mechanism\": {\"name\": \"laplace\", \"epsilon\": 1},\n"
      "  \"attack\": {\"name\": \"phi_lap\"},\n"
      "  \"x0\": 0,\n"
      "  \"x1\": 1,\n"
      "  \"n\": 10,\n"
      "  \"claimed_epsilon\": 1\n"
      "}\n";
  auto c = ParseAuditConfig(text);
  ASSERT_FALSE(c.ok());
  EXPECT_THAT(Message(c.status()), StartsWith("line 6:"));
  EXPECT_THAT(Message(c.status()), HasSubstr("'n'"));
}

TEST(ParseAuditConfigTest, UnknownNames) {
  const std::string base =
      R"({"mechanism": {"name": "MECH"}, "attack": {"name": "ATK"},
          "x0": 0, "x1": 1, "n": 100, "claimed_epsilon": 1})";
  auto replace = [&](const std::string& m, const std::string& a) {
    std::string s = base;
    s.replace(s.find("MECH"), 4, m);
    s.replace(s.find("ATK"), 3, a);
    return s;
  };
  EXPECT_FALSE(ParseAuditConfig(replace("exponential", "phi_lap")).ok());
  EXPECT_FALSE(ParseAuditConfig(replace("laplace", "oracle")).ok());
  EXPECT_TRUE(ParseAuditConfig(replace("laplace", "phi_lap")).ok());
}

TEST(ParseAuditConfigTest, EqualInputsRejected) {
  auto c = ParseAuditConfig(
      R"({"mechanism": {"name": "laplace"}, "attack": {"name": "phi_lap"},
          "x0": 1, "x1": 1, "n": 100, "claimed_epsilon": 1})");
  EXPECT_FALSE(c.ok());
}

TEST(RunAuditTest, ReplayIsDeterministic) {
  auto c = ParseAuditConfig(ReadConfig("fig4.json"));
  ASSERT_TRUE(c.ok());
  auto a = RunAudit(*c);
  c->options.exec = Execution::kSerial;
  auto b = RunAudit(*c);
  ASSERT_TRUE(a.ok() && b.ok());
  EXPECT_EQ(AuditReportToJson(*a, false), AuditReportToJson(*b, false));
}

TEST(RunExperimentConfigTest, UnknownExperiment) {
  auto r = RunExperimentConfig(R"({"experiment": "nope"})", std::nullopt);
  EXPECT_FALSE(r.ok());
}

TEST(RunExperimentConfigTest, SeedOverride) {
  const std::string text =
      R"({"experiment": "phi_lap_rates", "trials": 200, "master_seed": 1})";
  auto a = RunExperimentConfig(text, 5);
  ASSERT_TRUE(a.ok()) << a.status();
  EXPECT_THAT(*a, HasSubstr("\"master_seed\": 5"));
}

TEST(ParseSimulateConfigTest, BundledConfigsRun) {
  for (const char* name : {"secagg-dp-off.json", "secagg-symohe.json",
                           "secagg-prio-plusplus.json"}) {
    auto c = ParseSimulateConfig(ReadConfig(name));
    ASSERT_TRUE(c.ok()) << name << ": " << c.status();
    auto out = RunSimulateConfig(*c);
    ASSERT_TRUE(out.ok()) << name << ": " << out.status();
    EXPECT_THAT(*out, HasSubstr("leader_view"));
  }
}

TEST(ParseSimulateConfigTest, DpOffRecoversEveryone) {
  auto c = ParseSimulateConfig(ReadConfig("secagg-dp-off.json"));
  ASSERT_TRUE(c.ok());
  auto out = RunSimulateConfig(*c);
  ASSERT_TRUE(out.ok());
  EXPECT_THAT(*out, HasSubstr("\"exact_recovery_rate\": 1.0"));
}

TEST(ParseSimulateConfigTest, Errors) {
  EXPECT_FALSE(ParseSimulateConfig(R"({"mode": "prio", "d": 2,
      "n_clients": 1})").ok());
  EXPECT_FALSE(ParseSimulateConfig(R"({"mode": "dp_disabled", "d": 0,
      "n_clients": 1})").ok());
  EXPECT_FALSE(ParseSimulateConfig(R"({"mode": "prio_plusplus", "d": 2,
      "n_clients": 1})").ok());
}

}  // namespace
}  // namespace dpforensics
