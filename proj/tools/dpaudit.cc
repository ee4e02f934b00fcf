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

// dpaudit: batch driver for audits, experiments, log decoding and SecAgg
// simulation.
//
// Exit codes: 0 success (audit: no violation), 2 audit violation, 1 error.

#include <unistd.h>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"
#include "dpforensics/attacks.h"
#include "dpforensics/audit.h"
#include "dpforensics/config.h"
#include "dpforensics/record.h"
#include "dpforensics/rng.h"
#include "dpforensics/sketch.h"
#include "json.hpp"

namespace dpforensics {
namespace {

constexpr char kSeedEnv[] = "DPFORENSICS_SEED";
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitViolation = 2;

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Write to a sibling temp file, then rename over the target.
absl::Status WriteFileAtomic(const std::string& path, absl::string_view data) {
  const std::string tmp = absl::StrCat(path, ".tmp.", getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return absl::PermissionDeniedError(absl::StrCat("cannot write ", tmp));
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) return absl::DataLossError(absl::StrCat("short write to ", tmp));
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    return absl::InternalError(absl::StrCat("rename to ", path, " failed"));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::optional<uint64_t>> EnvSeed() {
  const char* env = std::getenv(kSeedEnv);
  if (env == nullptr || *env == '\0') return std::optional<uint64_t>();
  uint64_t seed;
  if (!absl::SimpleAtoi(env, &seed)) {
    return absl::InvalidArgumentError(
        absl::StrCat(kSeedEnv, "='", env, "' is not an unsigned integer"));
  }
  return std::optional<uint64_t>(seed);
}

// --seed wins, then the config's master_seed, then the environment, then 0.
absl::StatusOr<uint64_t> ResolveSeed(const std::optional<uint64_t>& flag,
                                     bool config_has_seed,
                                     uint64_t config_seed) {
  if (flag) return *flag;
  if (config_has_seed) return config_seed;
  absl::StatusOr<std::optional<uint64_t>> env = EnvSeed();
  if (!env.ok()) return env.status();
  return env->value_or(0);
}

std::string CsvPathFor(const std::string& out) {
  std::filesystem::path p(out);
  if (p.extension() == ".json") return p.replace_extension(".csv").string();
  return out + ".csv";
}

int Fail(const absl::Status& status) {
  std::cerr << "dpaudit: " << status << "\n";
  return kExitError;
}

int RunAuditCommand(const std::string& config_path,
                    const std::optional<uint64_t>& seed,
                    const std::string& out_path, std::string csv_path,
                    bool serial) {
  absl::StatusOr<std::string> text = ReadFile(config_path);
  if (!text.ok()) return Fail(text.status());
  absl::StatusOr<AuditConfig> config = ParseAuditConfig(*text);
  if (!config.ok()) {
    return Fail(absl::Status(config.status().code(),
                             absl::StrCat(config_path, ": ",
                                          config.status().message())));
  }
  absl::StatusOr<uint64_t> s =
      ResolveSeed(seed, config->has_seed, config->options.master_seed);
  if (!s.ok()) return Fail(s.status());
  config->options.master_seed = *s;
  config->options.exec = serial ? Execution::kSerial : Execution::kParallel;

  absl::StatusOr<AuditReport> report = RunAudit(*config);
  if (!report.ok()) return Fail(report.status());
  if (absl::Status w = WriteFileAtomic(out_path, AuditReportToJson(*report));
      !w.ok()) {
    return Fail(w);
  }
  if (csv_path.empty()) csv_path = CsvPathFor(out_path);
  if (absl::Status w = WriteFileAtomic(csv_path, AuditReportToCsv(*report));
      !w.ok()) {
    return Fail(w);
  }
  std::cout << VerdictName(report->violation) << " eps_lb=" << report->eps_lb
            << " claimed=" << report->claimed_epsilon
            << " (tn=" << report->confusion.tn << " fp=" << report->confusion.fp
            << " fn=" << report->confusion.fn << " tp=" << report->confusion.tp
            << ")\n";
  return report->violation ? kExitViolation : kExitOk;
}

int RunExperimentCommand(const std::string& config_path,
                         const std::optional<uint64_t>& seed,
                         const std::string& out_path) {
  absl::StatusOr<std::string> text = ReadFile(config_path);
  if (!text.ok()) return Fail(text.status());
  std::optional<uint64_t> override = seed;
  if (!override) {
    absl::StatusOr<std::optional<uint64_t>> env = EnvSeed();
    if (!env.ok()) return Fail(env.status());
    // The environment only fills in a seed the config leaves out.
    if (text->find("\"master_seed\"") == std::string::npos) override = *env;
  }
  absl::StatusOr<std::string> result = RunExperimentConfig(*text, override);
  if (!result.ok()) {
    return Fail(absl::Status(result.status().code(),
                             absl::StrCat(config_path, ": ",
                                          result.status().message())));
  }
  if (absl::Status w = WriteFileAtomic(out_path, *result); !w.ok()) return Fail(w);
  std::cout << *result;
  return kExitOk;
}

int RunSimulateCommand(const std::string& config_path,
                       const std::optional<uint64_t>& seed,
                       const std::string& out_path) {
  absl::StatusOr<std::string> text = ReadFile(config_path);
  if (!text.ok()) return Fail(text.status());
  absl::StatusOr<SimulateConfig> config = ParseSimulateConfig(*text);
  if (!config.ok()) {
    return Fail(absl::Status(config.status().code(),
                             absl::StrCat(config_path, ": ",
                                          config.status().message())));
  }
  absl::StatusOr<uint64_t> s =
      ResolveSeed(seed, config->has_seed, config->master_seed);
  if (!s.ok()) return Fail(s.status());
  config->master_seed = *s;
  absl::StatusOr<std::string> result = RunSimulateConfig(*config);
  if (!result.ok()) return Fail(result.status());
  if (absl::Status w = WriteFileAtomic(out_path, *result); !w.ok()) return Fail(w);
  return kExitOk;
}

int RunDecodeCommand(const std::string& log_path,
                     const std::string& guesses_path,
                     const std::string& mechanism, const std::string& out_path,
                     bool own_log) {
  absl::StatusOr<std::string> text = ReadFile(log_path);
  if (!text.ok()) return Fail(text.status());
  absl::StatusOr<AnalyticsRecord> log = ParseRecord(*text);
  if (!log.ok()) return Fail(log.status());
  if (log->provenance != kSyntheticProvenance && !own_log) {
    return Fail(absl::FailedPreconditionError(
        "refusing to decode a log this tool did not generate; pass "
        "--i-own-this-log if the data is yours"));
  }
  absl::StatusOr<GuessSet> guesses = GuessSet::FromFile(guesses_path);
  if (!guesses.ok()) return Fail(guesses.status());

  nlohmann::ordered_json out;
  out["key"] = log->key;
  out["mechanism"] = mechanism;
  out["guesses"] = guesses->size();
  nlohmann::ordered_json decoded = nlohmann::ordered_json::object();
  nlohmann::ordered_json errors = nlohmann::ordered_json::object();
  for (size_t i = 0; i < log->records.size(); ++i) {
    const std::string idx = std::to_string(i);
    absl::StatusOr<std::vector<std::string>> plausible;
    if (mechanism == "cms") {
      absl::StatusOr<CmsRecord> r = ParseCmsEntry(log->records[i], log->k, log->m);
      plausible = r.ok() ? CmsDecode(*r, *guesses, log->m)
                         : absl::StatusOr<std::vector<std::string>>(r.status());
    } else {
      absl::StatusOr<HcmsRecord> r = ParseHcmsEntry(log->records[i], log->k, log->m);
      plausible = r.ok() ? HcmsDecode(*r, *guesses, log->m)
                         : absl::StatusOr<std::vector<std::string>>(r.status());
    }
    if (plausible.ok()) {
      decoded[idx] = *plausible;
    } else {
      errors[idx] = std::string(plausible.status().message());
      std::cerr << "dpaudit: record " << i << ": " << plausible.status() << "\n";
    }
  }
  out["decoded"] = decoded;
  out["errors"] = errors;
  if (absl::Status w = WriteFileAtomic(out_path, out.dump(2) + "\n"); !w.ok()) {
    return Fail(w);
  }
  return kExitOk;
}

int RunRecordCommand(const std::string& mechanism, const std::string& input,
                     double epsilon, int64_t k, int64_t m, int64_t count,
                     const std::optional<uint64_t>& seed,
                     const std::string& key, const std::string& out_path) {
  absl::StatusOr<SketchConfig> config = SketchConfig::Create(epsilon, m, k);
  if (!config.ok()) return Fail(config.status());
  absl::StatusOr<uint64_t> s = ResolveSeed(seed, false, 0);
  if (!s.ok()) return Fail(s.status());
  AnalyticsRecord log;
  log.key = key;
  log.epsilon = epsilon;
  log.k = k;
  log.m = m;
  log.provenance = std::string(kSyntheticProvenance);
  for (int64_t i = 0; i < count; ++i) {
    RngStream stream = RngStream::Derive(*s, i);
    if (mechanism == "cms") {
      absl::StatusOr<CmsRecord> r = CmsClient(input, *config, stream);
      if (!r.ok()) return Fail(r.status());
      log.records.push_back(SerializeCmsEntry(*r));
    } else {
      absl::StatusOr<HcmsRecord> r = HcmsClient(input, *config, stream);
      if (!r.ok()) return Fail(r.status());
      log.records.push_back(SerializeHcmsEntry(*r));
    }
  }
  if (absl::Status w = WriteFileAtomic(out_path, SerializeRecord(log)); !w.ok()) {
    return Fail(w);
  }
  return kExitOk;
}

}  // namespace
}  // namespace dpforensics

int main(int argc, char** argv) {
  using namespace dpforensics;
  CLI::App app{"Differential-privacy forensics: audits, attacks, decoders"};
  app.require_subcommand(1);

  std::string config, out, csv, log, guesses, mechanism = "cms";
  std::optional<uint64_t> seed;
  bool serial = false, own_log = false;

  CLI::App* audit = app.add_subcommand("audit", "Run an epsilon lower-bound audit");
  audit->add_option("--config", config, "Audit config (JSON)")->required()->check(CLI::ExistingFile);
  audit->add_option("--seed", seed, "Master seed (overrides config and $DPFORENSICS_SEED)");
  audit->add_option("--out", out, "Report path (JSON)")->required();
  audit->add_option("--csv", csv, "Per-run CSV path (default: report path with .csv)");
  audit->add_flag("--serial", serial, "Use the serial reference path");

  CLI::App* experiment = app.add_subcommand("experiment", "Run a Monte Carlo rate experiment");
  experiment->add_option("--config", config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  experiment->add_option("--seed", seed, "Master seed");
  experiment->add_option("--out", out, "Result path (JSON)")->required();

  CLI::App* decode = app.add_subcommand("decode", "Decode sketch records against a guess list");
  decode->add_option("--log", log, "Analytics log (JSON)")->required()->check(CLI::ExistingFile);
  decode->add_option("--guesses", guesses, "Guess list, one candidate per line")->required()->check(CLI::ExistingFile);
  decode->add_option("--mechanism", mechanism, "cms or hcms")->check(CLI::IsMember({"cms", "hcms"}));
  decode->add_option("--out", out, "Decoded sets (JSON)")->required();
  decode->add_flag("--i-own-this-log", own_log, "Allow logs not generated by this tool");

  CLI::App* simulate = app.add_subcommand("simulate", "Simulate a SecAgg collection round");
  simulate->add_option("--config", config, "SecAgg config (JSON)")->required()->check(CLI::ExistingFile);
  simulate->add_option("--seed", seed, "Master seed");
  simulate->add_option("--out", out, "Views report (JSON)")->required();

  std::string input, key = "dpforensics.synthetic";
  double epsilon = 4.0;
  int64_t k = 65536, m = 1024, count = 1;
  CLI::App* record = app.add_subcommand("record", "Generate a synthetic CMS/HCMS log");
  record->add_option("--mechanism", mechanism, "cms or hcms")->check(CLI::IsMember({"cms", "hcms"}));
  record->add_option("--input", input, "True client value")->required();
  record->add_option("--epsilon", epsilon, "Privacy parameter");
  record->add_option("--k", k, "Hash count");
  record->add_option("--m", m, "Sketch width");
  record->add_option("--count", count, "Number of records")->check(CLI::PositiveNumber);
  record->add_option("--key", key, "Log key");
  record->add_option("--seed", seed, "Master seed");
  record->add_option("--out", out, "Log path (JSON)")->required();

  CLI11_PARSE(app, argc, argv);

  if (audit->parsed()) return RunAuditCommand(config, seed, out, csv, serial);
  if (experiment->parsed()) return RunExperimentCommand(config, seed, out);
  if (decode->parsed()) return RunDecodeCommand(log, guesses, mechanism, out, own_log);
  if (simulate->parsed()) return RunSimulateCommand(config, seed, out);
  if (record->parsed()) {
    return RunRecordCommand(mechanism, input, epsilon, k, m, count, seed, key, out);
  }
  return 1;
}
