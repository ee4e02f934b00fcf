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

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace {

using ::testing::HasSubstr;
using ::testing::Not;

const std::string kBinary = DPAUDIT_PATH;
const std::string kSource = DPF_SOURCE_DIR;

std::string TempPath(const std::string& name) {
  return ::testing::TempDir() + "/cli_test_" + name;
}

// Runs `env args` through the shell and returns the exit status.
int RunCli(const std::string& args, const std::string& env = "") {
  const std::string cmd =
      env + " " + kBinary + " " + args + " >/dev/null 2>" + TempPath("stderr");
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void Write(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

// Report text without the wall-clock line.
std::string StripTiming(const std::string& json) {
  std::stringstream in(json);
  std::string out, line;
  while (std::getline(in, line)) {
    if (line.find("runtime_seconds") == std::string::npos) out += line + "\n";
  }
  return out;
}

TEST(CliTest, AuditViolationExitCode) {
  const std::string out = TempPath("fig4.json");
  ASSERT_EQ(RunCli("audit --config " + kSource + "/configs/fig4.json --out " +
                out),
            2);
  EXPECT_THAT(Slurp(out), HasSubstr("\"verdict\": \"VIOLATION\""));
  const std::string csv = Slurp(TempPath("fig4.csv"));
  EXPECT_THAT(csv, ::testing::StartsWith("run_index,secret_bit,prediction\n"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1001);
}

TEST(CliTest, AuditNoViolationExitCode) {
  EXPECT_EQ(RunCli("audit --config " + kSource + "/configs/hcms.json --out " +
                TempPath("hcms.json")),
            0);
  EXPECT_THAT(Slurp(TempPath("hcms.json")),
              HasSubstr("\"verdict\": \"NO-VIOLATION\""));
}

TEST(CliTest, AuditReplayIsIdentical) {
  const std::string cfg = kSource + "/configs/fig6.json";
  RunCli("audit --config " + cfg + " --out " + TempPath("a.json"));
  RunCli("audit --serial --config " + cfg + " --out " + TempPath("b.json"));
  EXPECT_EQ(StripTiming(Slurp(TempPath("a.json"))),
            StripTiming(Slurp(TempPath("b.json"))));
  EXPECT_EQ(Slurp(TempPath("a.csv")), Slurp(TempPath("b.csv")));
}

TEST(CliTest, SeedPrecedence) {
  const std::string cfg = TempPath("noseed.json");
  Write(cfg, R"({"mechanism": {"name": "laplace"}, "attack": {"name": "phi_lap"},
                 "x0": 0, "x1": 1, "n": 200, "family": "laplace",
                 "claimed_epsilon": 1})");
  RunCli("audit --config " + cfg + " --out " + TempPath("env.json"),
      "DPFORENSICS_SEED=7");
  RunCli("audit --config " + cfg + " --seed 7 --out " + TempPath("flag.json"));
  RunCli("audit --config " + cfg + " --seed 8 --out " + TempPath("other.json"),
      "DPFORENSICS_SEED=7");
  const std::string env = StripTiming(Slurp(TempPath("env.json")));
  EXPECT_THAT(env, HasSubstr("\"master_seed\": 7"));
  EXPECT_EQ(env, StripTiming(Slurp(TempPath("flag.json"))));
  EXPECT_THAT(Slurp(TempPath("other.json")), HasSubstr("\"master_seed\": 8"));
  EXPECT_EQ(RunCli("audit --config " + cfg + " --out " + TempPath("bad.json"),
                "DPFORENSICS_SEED=abc"),
            1);
}

TEST(CliTest, BadConfigReportsLine) {
  const std::string cfg = TempPath("broken.json");
  Write(cfg, "{\n  \"mechanism\": {\"name\": \"laplace\"},\n  \"n\": \n}\n");
  EXPECT_EQ(RunCli("audit --config " + cfg + " --out " + TempPath("x.json")), 1);
  EXPECT_THAT(Slurp(TempPath("stderr")), HasSubstr("line "));
}

TEST(CliTest, RecordThenDecode) {
  const std::string log = TempPath("log.json");
  ASSERT_EQ(RunCli("record --mechanism cms --input x --epsilon 4 --k 65536 "
                "--m 1024 --count 20 --seed 3 --out " + log),
            0);
  const std::string guesses = TempPath("guesses.txt");
  Write(guesses, "x\ny\nz\n");
  const std::string out = TempPath("decoded.json");
  ASSERT_EQ(RunCli("decode --log " + log + " --guesses " + guesses +
                " --mechanism cms --out " + out),
            0);
  const std::string decoded = Slurp(out);
  EXPECT_THAT(decoded, HasSubstr("\"decoded\""));
  EXPECT_THAT(decoded, HasSubstr("\"x\""));
}

TEST(CliTest, DecodeRefusesForeignLogs) {
  const std::string log = TempPath("foreign.json");
  Write(log, R"({"key": "k", "parameters": {"epsilon": 4, "k": 65536,
                 "m": 1024}, "records": ["11688,0000820000000000000000200000004...", "bad"]})");
  const std::string guesses = kSource + "/data/emoji152.txt";
  EXPECT_EQ(RunCli("decode --log " + log + " --guesses " + guesses +
                " --mechanism cms --out " + TempPath("f.json")),
            1);
  ASSERT_EQ(RunCli("decode --i-own-this-log --log " + log + " --guesses " +
                guesses + " --mechanism cms --out " + TempPath("f.json")),
            0);
  const std::string out = Slurp(TempPath("f.json"));
  EXPECT_THAT(out, HasSubstr("MalformedRecord"));
}

TEST(CliTest, Simulate) {
  const std::string out = TempPath("sim.json");
  ASSERT_EQ(RunCli("simulate --config " + kSource +
                "/configs/secagg-dp-off.json --out " + out),
            0);
  EXPECT_THAT(Slurp(out), HasSubstr("\"exact_recovery_rate\": 1.0"));
}

TEST(CliTest, UsageErrors) {
  EXPECT_NE(RunCli("audit --out " + TempPath("x.json")), 0);
  EXPECT_NE(RunCli("frobnicate"), 0);
  EXPECT_THAT(Slurp(TempPath("stderr")), Not(HasSubstr("Segmentation")));
}

}  // namespace
