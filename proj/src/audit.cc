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

#include "dpforensics/audit.h"

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"

namespace dpforensics {
namespace {

constexpr double kEpsSaturation = 64.0;

bool Constant(const std::vector<uint8_t>& s) {
  for (uint8_t b : s) {
    if (b != s.front()) return false;
  }
  return true;
}

absl::Status ValidateOptions(const AuditOptions& o) {
  if (o.n < kMinAuditRuns) {
    return absl::InvalidArgumentError(
        absl::StrCat("n must be >= ", kMinAuditRuns, ", got ", o.n));
  }
  if (!(o.gamma > 0.0 && o.gamma < 1.0)) {
    return absl::InvalidArgumentError("gamma must lie in (0, 1)");
  }
  if (!(o.delta >= 0.0 && o.delta < 1.0)) {
    return absl::InvalidArgumentError("delta must lie in [0, 1)");
  }
  return absl::OkStatus();
}

}  // namespace

double EpsilonLbForTheta(Family family, double theta, double delta,
                         bool* saturated) {
  absl::StatusOr<double> eps =
      EpsOfF(TradeoffCurve{family, theta, delta}, delta);
  if (saturated != nullptr) *saturated = !eps.ok();
  return eps.ok() ? *eps : kEpsSaturation;
}

absl::StatusOr<AuditReport> AuditFromConfusion(const ConfusionMatrix& confusion,
                                               const AuditOptions& options) {
  if (absl::Status s = confusion.Validate(); !s.ok()) return s;
  const uint64_t mc_seed =
      RngStream::DeriveSeed(options.master_seed, kMonteCarloStreamIndex);
  absl::StatusOr<ThetaStarResult> theta =
      ThetaStar(options.family, confusion, options.gamma, options.mc_samples,
                mc_seed, options.delta, options.exec);
  if (!theta.ok()) return theta.status();

  AuditReport report;
  report.confusion = confusion;
  report.family = options.family;
  report.gamma = options.gamma;
  report.delta = options.delta;
  report.n_runs = confusion.total();
  report.master_seed = options.master_seed;
  report.mc_samples = options.mc_samples;
  report.claimed_epsilon = options.claimed_epsilon;
  report.theta_star = theta->theta_star;
  bool eps_saturated = false;
  report.eps_lb = EpsilonLbForTheta(options.family, theta->theta_star,
                                    options.delta, &eps_saturated);
  report.saturated = theta->saturated || eps_saturated;
  report.violation = report.eps_lb > options.claimed_epsilon;
  return report;
}

absl::StatusOr<AuditReport> AuditEpsilonLb(const Mechanism& mechanism,
                                           const MembershipTest& test,
                                           const MechanismInput& x0,
                                           const MechanismInput& x1,
                                           const AuditOptions& options) {
  if (absl::Status s = ValidateOptions(options); !s.ok()) return s;
  if (x0 == x1) return absl::InvalidArgumentError("x0 and x1 must differ");
  const auto start = std::chrono::steady_clock::now();

  RngStream secret_stream =
      RngStream::Derive(options.master_seed, kSecretStreamIndex);
  std::vector<uint8_t> secret(options.n);
  for (int attempt = 0; attempt < 2; ++attempt) {
    for (auto& b : secret) b = secret_stream.NextU32() >> 31;
    if (!Constant(secret)) break;
    if (attempt == 1) {
      return absl::FailedPreconditionError(
          "DegenerateSplit: secret bits constant twice");
    }
  }

  std::vector<uint8_t> predictions(options.n, 0);
  std::vector<absl::Status> errors(options.n);
  ForEachTrial(options.n, options.exec, [&](int64_t i) {
    RngStream stream = RngStream::Derive(options.master_seed, i);
    absl::StatusOr<MechanismReport> out =
        mechanism(secret[i] ? x1 : x0, stream);
    if (!out.ok()) {
      errors[i] = out.status();
      return;
    }
    predictions[i] = test.predict(*out) ? 1 : 0;
  });
  for (int64_t i = 0; i < options.n; ++i) {
    if (!errors[i].ok()) {
      return absl::Status(errors[i].code(),
                          absl::StrCat("run ", i, ": ", errors[i].message()));
    }
  }

  ConfusionMatrix confusion;
  for (int64_t i = 0; i < options.n; ++i) {
    confusion.Add(secret[i], predictions[i]);
  }
  absl::StatusOr<AuditReport> report = AuditFromConfusion(confusion, options);
  if (!report.ok()) return report.status();
  report->attack = test.label;
  report->secret_bits = std::move(secret);
  report->predictions = std::move(predictions);
  report->runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

absl::string_view VerdictName(bool violation) {
  return violation ? "VIOLATION" : "NO-VIOLATION";
}

std::string AuditReportToJson(const AuditReport& r, bool include_timing) {
  nlohmann::ordered_json j;
  j["verdict"] = VerdictName(r.violation);
  j["eps_lb"] = r.eps_lb;
  j["claimed_epsilon"] = r.claimed_epsilon;
  j["delta"] = r.delta;
  j["gamma"] = r.gamma;
  j["family"] = FamilyName(r.family);
  j["theta_star"] = r.theta_star;
  j["saturated"] = r.saturated;
  j["tn"] = r.confusion.tn;
  j["fp"] = r.confusion.fp;
  j["fn"] = r.confusion.fn;
  j["tp"] = r.confusion.tp;
  j["accuracy"] = r.confusion.accuracy();
  j["fpr"] = r.confusion.fpr();
  j["fnr"] = r.confusion.fnr();
  j["n_runs"] = r.n_runs;
  j["master_seed"] = r.master_seed;
  j["mc_samples"] = r.mc_samples;
  if (!r.mechanism.empty()) j["mechanism"] = r.mechanism;
  if (!r.attack.empty()) j["attack"] = r.attack;
  if (include_timing) j["runtime_seconds"] = r.runtime_seconds;
  return j.dump(2) + "\n";
}

std::string AuditReportToCsv(const AuditReport& report) {
  std::string out = "run_index,secret_bit,prediction\n";
  for (size_t i = 0; i < report.secret_bits.size(); ++i) {
    absl::StrAppend(&out, i, ",", report.secret_bits[i], ",",
                    report.predictions[i], "\n");
  }
  return out;
}

}  // namespace dpforensics
