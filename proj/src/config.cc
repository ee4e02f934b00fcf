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

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"
#include "dpforensics/attacks.h"
#include "dpforensics/experiments.h"
#include "dpforensics/gaussian.h"
#include "dpforensics/laplace.h"
#include "dpforensics/sketch.h"
#include "json.hpp"

namespace dpforensics {
namespace {

using nlohmann::json;

int LineOfOffset(absl::string_view text, size_t offset) {
  int line = 1;
  for (size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

int LineOfKey(absl::string_view text, absl::string_view key) {
  const size_t pos = text.find(absl::StrCat("\"", key, "\""));
  return pos == absl::string_view::npos ? 1 : LineOfOffset(text, pos);
}

absl::Status ErrorAt(absl::string_view text, absl::string_view key,
                     absl::string_view message) {
  return absl::InvalidArgumentError(
      absl::StrCat("line ", LineOfKey(text, key), ": ", message));
}

absl::StatusOr<json> ParseJson(absl::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("line ", LineOfOffset(text, e.byte > 0 ? e.byte - 1 : 0),
                     ": JSON parse error: ", e.what()));
  }
}

// Typed field access with config-anchored errors.
class Fields {
 public:
  Fields(const json& obj, absl::string_view text) : obj_(obj), text_(text) {}

  bool Has(const char* key) const { return obj_.contains(key); }

  absl::Status Number(const char* key, double& out, bool required) const {
    if (!obj_.contains(key)) return Missing(key, required);
    if (!obj_[key].is_number()) {
      return ErrorAt(text_, key, absl::StrCat("'", key, "' must be a number"));
    }
    out = obj_[key].get<double>();
    if (!std::isfinite(out)) {
      return ErrorAt(text_, key, absl::StrCat("'", key, "' must be finite"));
    }
    return absl::OkStatus();
  }

  absl::Status Integer(const char* key, int64_t& out, bool required) const {
    if (!obj_.contains(key)) return Missing(key, required);
    if (!obj_[key].is_number_integer()) {
      return ErrorAt(text_, key,
                     absl::StrCat("'", key, "' must be an integer"));
    }
    out = obj_[key].get<int64_t>();
    return absl::OkStatus();
  }

  // Non-negative integer or a decimal string (for full 64-bit seeds).
  absl::Status Unsigned(const char* key, uint64_t& out, bool required) const {
    if (!obj_.contains(key)) return Missing(key, required);
    const json& v = obj_[key];
    if (v.is_number_unsigned()) {
      out = v.get<uint64_t>();
      return absl::OkStatus();
    }
    if (v.is_string() && absl::SimpleAtoi(v.get<std::string>(), &out)) {
      return absl::OkStatus();
    }
    return ErrorAt(text_, key,
                   absl::StrCat("'", key, "' must be a non-negative integer"));
  }

  absl::Status String(const char* key, std::string& out, bool required) const {
    if (!obj_.contains(key)) return Missing(key, required);
    if (!obj_[key].is_string()) {
      return ErrorAt(text_, key, absl::StrCat("'", key, "' must be a string"));
    }
    out = obj_[key].get<std::string>();
    return absl::OkStatus();
  }

 private:
  absl::Status Missing(const char* key, bool required) const {
    if (!required) return absl::OkStatus();
    return absl::InvalidArgumentError(
        absl::StrCat("line 1: missing required field '", key, "'"));
  }

  const json& obj_;
  absl::string_view text_;
};

#define DPF_RETURN_IF_ERROR(expr)         \
  do {                                    \
    if (absl::Status _s = (expr); !_s.ok()) return _s; \
  } while (0)

enum class InputKind { kScalar, kIndex, kText, kVector };

absl::StatusOr<InputKind> InputKindFor(absl::string_view mechanism) {
  if (mechanism == "laplace") return InputKind::kScalar;
  if (mechanism == "gaussian" || mechanism == "gauss_share") {
    return InputKind::kVector;
  }
  if (mechanism == "prio_symohe") return InputKind::kIndex;
  if (mechanism == "cms" || mechanism == "hcms" || mechanism == "obh") {
    return InputKind::kText;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown mechanism '", mechanism, "'"));
}

// Vector inputs: an explicit array of d numbers, or
// {"constant": c, "normalize": bool} expanding to d copies of c, optionally
// scaled to unit L2 norm.
absl::StatusOr<std::vector<double>> ParseVector(const json& v, int64_t d) {
  if (v.is_array()) {
    if (static_cast<int64_t>(v.size()) != d) {
      return absl::InvalidArgumentError(
          absl::StrCat("vector has ", v.size(), " entries, d=", d));
    }
    std::vector<double> out;
    for (const json& e : v) {
      if (!e.is_number()) {
        return absl::InvalidArgumentError("vector entries must be numbers");
      }
      out.push_back(e.get<double>());
    }
    return out;
  }
  if (v.is_object() && v.contains("constant") && v["constant"].is_number()) {
    double c = v["constant"].get<double>();
    if (v.value("normalize", false) && c != 0.0) {
      c = (c > 0 ? 1.0 : -1.0) / std::sqrt(static_cast<double>(d));
    }
    return std::vector<double>(d, c);
  }
  return absl::InvalidArgumentError(
      "vector input must be an array or {\"constant\": c}");
}

absl::StatusOr<MechanismInput> ParseInput(const json& v,
                                          const MechanismParams& m) {
  absl::StatusOr<InputKind> kind = InputKindFor(m.name);
  if (!kind.ok()) return kind.status();
  switch (*kind) {
    case InputKind::kScalar:
      if (!v.is_number()) return absl::InvalidArgumentError("expected a number");
      return MechanismInput(v.get<double>());
    case InputKind::kIndex:
      if (!v.is_number_integer()) {
        return absl::InvalidArgumentError("expected an integer in [1, d]");
      }
      return MechanismInput(v.get<int64_t>());
    case InputKind::kText:
      if (!v.is_string()) return absl::InvalidArgumentError("expected a string");
      return MechanismInput(v.get<std::string>());
    case InputKind::kVector: {
      absl::StatusOr<std::vector<double>> vec = ParseVector(v, m.d);
      if (!vec.ok()) return vec.status();
      return MechanismInput(*std::move(vec));
    }
  }
  return absl::InternalError("unreachable");
}

absl::Status ParseMechanismParams(const json& obj, absl::string_view text,
                                  MechanismParams& m) {
  if (!obj.is_object()) return ErrorAt(text, "mechanism", "'mechanism' must be an object");
  Fields f(obj, text);
  DPF_RETURN_IF_ERROR(f.String("name", m.name, true));
  DPF_RETURN_IF_ERROR(f.Number("epsilon", m.epsilon, false));
  DPF_RETURN_IF_ERROR(f.Number("range", m.range, false));
  DPF_RETURN_IF_ERROR(f.Integer("samples", m.samples, false));
  DPF_RETURN_IF_ERROR(f.Number("sigma", m.sigma, false));
  DPF_RETURN_IF_ERROR(f.Number("sigma_ss", m.sigma_ss, false));
  DPF_RETURN_IF_ERROR(f.Integer("d", m.d, false));
  DPF_RETURN_IF_ERROR(f.Integer("k", m.k, false));
  DPF_RETURN_IF_ERROR(f.Unsigned("prime", m.prime, false));
  if (absl::StatusOr<InputKind> k = InputKindFor(m.name); !k.ok()) {
    return ErrorAt(text, "name", k.status().message());
  }
  if (m.samples < 1) return ErrorAt(text, "samples", "'samples' must be >= 1");
  if (m.d < 1) return ErrorAt(text, "d", "'d' must be >= 1");
  if (m.k < 1) return ErrorAt(text, "k", "'k' must be >= 1");
  return absl::OkStatus();
}

template <typename T>
absl::StatusOr<T> Expect(const MechanismInput& x) {
  if (const T* v = std::get_if<T>(&x)) return *v;
  return absl::InvalidArgumentError("input has the wrong type for mechanism");
}

}  // namespace

absl::StatusOr<AuditConfig> ParseAuditConfig(absl::string_view text) {
  absl::StatusOr<json> parsed = ParseJson(text);
  if (!parsed.ok()) return parsed.status();
  const json& j = *parsed;
  if (!j.is_object()) return absl::InvalidArgumentError("line 1: config must be a JSON object");
  AuditConfig c;
  Fields f(j, text);
  DPF_RETURN_IF_ERROR(f.String("name", c.name, false));
  if (!j.contains("mechanism")) return ErrorAt(text, "mechanism", "missing 'mechanism'");
  DPF_RETURN_IF_ERROR(ParseMechanismParams(j["mechanism"], text, c.mechanism));
  if (!j.contains("attack") || !j["attack"].is_object()) {
    return ErrorAt(text, "attack", "missing object 'attack'");
  }
  Fields a(j["attack"], text);
  DPF_RETURN_IF_ERROR(a.String("name", c.attack.name, true));
  int64_t window = c.attack.window;
  DPF_RETURN_IF_ERROR(a.Integer("window", window, false));
  if (window < 0 || window > 4096) return ErrorAt(text, "window", "'window' must lie in [0, 4096]");
  c.attack.window = static_cast<int>(window);
  DPF_RETURN_IF_ERROR(a.String("rule", c.attack.rule, false));

  for (const char* key : {"x0", "x1"}) {
    if (!j.contains(key)) return ErrorAt(text, key, absl::StrCat("missing '", key, "'"));
    absl::StatusOr<MechanismInput> x = ParseInput(j[key], c.mechanism);
    if (!x.ok()) {
      return ErrorAt(text, key, absl::StrCat("'", key, "': ", x.status().message()));
    }
    (absl::string_view(key) == "x0" ? c.x0 : c.x1) = *std::move(x);
  }
  if (c.x0 == c.x1) return ErrorAt(text, "x1", "x0 and x1 must differ");

  AuditOptions& o = c.options;
  DPF_RETURN_IF_ERROR(f.Integer("n", o.n, true));
  if (o.n < kMinAuditRuns) {
    return ErrorAt(text, "n", absl::StrCat("'n' must be >= ", kMinAuditRuns));
  }
  DPF_RETURN_IF_ERROR(f.Number("gamma", o.gamma, false));
  if (!(o.gamma > 0.0 && o.gamma < 1.0)) return ErrorAt(text, "gamma", "'gamma' must lie in (0, 1)");
  DPF_RETURN_IF_ERROR(f.Number("delta", o.delta, false));
  if (!(o.delta >= 0.0 && o.delta < 1.0)) return ErrorAt(text, "delta", "'delta' must lie in [0, 1)");
  std::string family = "eps_delta";
  DPF_RETURN_IF_ERROR(f.String("family", family, false));
  absl::StatusOr<Family> fam = ParseFamily(family);
  if (!fam.ok()) return ErrorAt(text, "family", fam.status().message());
  o.family = *fam;
  DPF_RETURN_IF_ERROR(f.Number("claimed_epsilon", o.claimed_epsilon, true));
  DPF_RETURN_IF_ERROR(f.Integer("mc_samples", o.mc_samples, false));
  if (o.mc_samples < 10000) return ErrorAt(text, "mc_samples", "'mc_samples' must be >= 10000");
  c.has_seed = j.contains("master_seed");
  DPF_RETURN_IF_ERROR(f.Unsigned("master_seed", o.master_seed, false));

  absl::StatusOr<MembershipTest> test =
      BuildAttack(c.attack, c.mechanism, c.x0, c.x1);
  if (!test.ok()) return ErrorAt(text, "attack", test.status().message());
  return c;
}

absl::StatusOr<Mechanism> BuildMechanism(const MechanismParams& p) {
  const std::string& name = p.name;
  if (name == "laplace") {
    absl::StatusOr<LaplaceParams> lp =
        LaplaceParams::FromRangeEpsilon(0.0, p.range, p.epsilon);
    if (!lp.ok()) return lp.status();
    const double lambda = lp->lambda;
    const int64_t m = p.samples;
    return Mechanism([lambda, m](const MechanismInput& x, RngStream& s)
                         -> absl::StatusOr<MechanismReport> {
      absl::StatusOr<double> mu = Expect<double>(x);
      if (!mu.ok()) return mu.status();
      LaplaceOutput out;
      for (int64_t i = 0; i < m; ++i) {
        out.samples.push_back(SampleLaplace(s, LaplaceParams{*mu, lambda}));
      }
      return out;
    });
  }
  if (name == "gaussian") {
    if (!(p.sigma > 0.0)) return absl::InvalidArgumentError("sigma must be > 0");
    const double sigma = p.sigma;
    return Mechanism([sigma](const MechanismInput& x, RngStream& s)
                         -> absl::StatusOr<MechanismReport> {
      absl::StatusOr<std::vector<double>> v = Expect<std::vector<double>>(x);
      if (!v.ok()) return v.status();
      absl::StatusOr<std::vector<float>> y = GaussianMechanism(*v, sigma, s);
      if (!y.ok()) return y.status();
      return GaussianOutput{*std::move(y)};
    });
  }
  if (name == "gauss_share") {
    const double sigma_ss = p.sigma_ss;
    return Mechanism([sigma_ss](const MechanismInput& x, RngStream& s)
                         -> absl::StatusOr<MechanismReport> {
      absl::StatusOr<std::vector<double>> v = Expect<std::vector<double>>(x);
      if (!v.ok()) return v.status();
      absl::StatusOr<GaussShareBundle> b = GaussSecretShare(*v, sigma_ss, s);
      if (!b.ok()) return b.status();
      return *std::move(b);
    });
  }
  if (name == "prio_symohe") {
    SecAggConfig cfg;
    cfg.mode = SecAggMode::kPrioSymOhe;
    cfg.epsilon = p.epsilon;
    cfg.d = p.d;
    cfg.prime = p.prime;
    if (absl::Status st = cfg.Validate(); !st.ok()) return st;
    return Mechanism([cfg](const MechanismInput& x, RngStream& s)
                         -> absl::StatusOr<MechanismReport> {
      absl::StatusOr<int64_t> v = Expect<int64_t>(x);
      if (!v.ok()) return v.status();
      absl::StatusOr<FieldShareBundle> b = PrioClientSubmit(*v, cfg, s);
      if (!b.ok()) return b.status();
      absl::StatusOr<std::vector<uint64_t>> y = FieldReconstruct(*b);
      if (!y.ok()) return y.status();
      return SymOheOutput{BitVector(y->begin(), y->end())};
    });
  }
  if (name == "cms" || name == "hcms" || name == "obh") {
    absl::StatusOr<SketchConfig> cfg = SketchConfig::Create(p.epsilon, p.d, p.k);
    if (!cfg.ok()) return cfg.status();
    if (name == "hcms" && !IsPowerOfTwo(p.d)) {
      return absl::InvalidArgumentError("hcms needs d a power of two");
    }
    if (name == "obh" && p.d > kObhMaxBits) {
      return absl::OutOfRangeError("OutOfDomain: obh needs d <= 128");
    }
    const SketchConfig c = *cfg;
    const std::string kind = name;
    return Mechanism([c, kind](const MechanismInput& x, RngStream& s)
                         -> absl::StatusOr<MechanismReport> {
      absl::StatusOr<std::string> v = Expect<std::string>(x);
      if (!v.ok()) return v.status();
      if (kind == "cms") {
        absl::StatusOr<CmsRecord> r = CmsClient(*v, c, s);
        if (!r.ok()) return r.status();
        return *std::move(r);
      }
      if (kind == "hcms") {
        absl::StatusOr<HcmsRecord> r = HcmsClient(*v, c, s);
        if (!r.ok()) return r.status();
        return *r;
      }
      absl::StatusOr<ObhRecord> r = OneBitHistogram(*v, c, s);
      if (!r.ok()) return r.status();
      return *r;
    });
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown mechanism '", name, "'"));
}

absl::StatusOr<MembershipTest> BuildAttack(const AttackParams& attack,
                                           const MechanismParams& m,
                                           const MechanismInput& x0,
                                           const MechanismInput& x1) {
  auto needs = [&](absl::string_view mech) -> absl::Status {
    if (m.name == mech) return absl::OkStatus();
    return absl::InvalidArgumentError(absl::StrCat(
        "attack '", attack.name, "' needs mechanism '", mech, "', got '",
        m.name, "'"));
  };
  const std::string& name = attack.name;
  const int k = attack.window;
  if (name == "phi_lap") {
    DPF_RETURN_IF_ERROR(needs("laplace"));
    const double mu = std::get<double>(x0);
    const double lambda = m.range / m.epsilon;
    return MembershipTest{name, [mu, lambda](const MechanismReport& r) {
                            const auto& y = std::get<LaplaceOutput>(r).samples;
                            return *BoostedLapTest(y, mu, lambda) ? 1 : 0;
                          }};
  }
  if (name == "boosted_gauss") {
    DPF_RETURN_IF_ERROR(needs("gaussian"));
    if (m.d % 2 != 0) return absl::InvalidArgumentError("boosted_gauss needs even d");
    const std::vector<double> c = ClipToUnitBall(std::get<std::vector<double>>(x0));
    for (double v : c) {
      if (v != c.front()) {
        return absl::InvalidArgumentError("boosted_gauss needs a constant x0");
      }
    }
    const double mu = c.front();
    const double sigma2 = m.sigma * m.sigma;
    return MembershipTest{name, [mu, sigma2, k](const MechanismReport& r) {
                            const auto& y = std::get<GaussianOutput>(r).y;
                            return *BoostedGaussTest(y, mu, sigma2, k) ? 1 : 0;
                          }};
  }
  if (name == "dzk_gauss") {
    DPF_RETURN_IF_ERROR(needs("gauss_share"));
    if (m.d % 2 != 0) return absl::InvalidArgumentError("dzk_gauss needs even d");
    const std::vector<double> base = std::get<std::vector<double>>(x0);
    const double sigma2 = m.sigma_ss * m.sigma_ss;
    return MembershipTest{name, [base, sigma2, k](const MechanismReport& r) {
                            const auto& b = std::get<GaussShareBundle>(r);
                            std::vector<float> w(base.size());
                            for (size_t i = 0; i < w.size(); ++i) {
                              w[i] = static_cast<float>(base[i] -
                                                        b.leader_share[i]);
                            }
                            return *BoostedGaussTest(w, 0.0, sigma2, k) ? 1 : 0;
                          }};
  }
  if (name == "prio_membership") {
    DPF_RETURN_IF_ERROR(needs("prio_symohe"));
    if (m.d != 2) return absl::InvalidArgumentError("prio_membership needs d = 2");
    if (std::get<int64_t>(x0) != 1 || std::get<int64_t>(x1) != 2) {
      return absl::InvalidArgumentError("prio_membership needs x0 = 1, x1 = 2");
    }
    absl::StatusOr<PrioRule> rule = ParsePrioRule(attack.rule);
    if (!rule.ok()) return rule.status();
    const PrioRule r0 = *rule;
    return MembershipTest{absl::StrCat(name, ":", attack.rule),
                          [r0](const MechanismReport& r) {
                            return *PrioMembershipTest(
                                std::get<SymOheOutput>(r).y, r0);
                          }};
  }
  if (name == "cms_decode" || name == "hcms_decode" ||
      name == "obh_plausible") {
    const std::string mech = name == "cms_decode"    ? "cms"
                             : name == "hcms_decode" ? "hcms"
                                                     : "obh";
    DPF_RETURN_IF_ERROR(needs(mech));
    const std::string g = std::get<std::string>(x0);
    const int64_t d = m.d;
    if (mech == "cms") {
      return MembershipTest{name, [g, d](const MechanismReport& r) {
                              return CmsPlausible(std::get<CmsRecord>(r), g, d)
                                         ? 0
                                         : 1;
                            }};
    }
    if (mech == "hcms") {
      return MembershipTest{name, [g, d](const MechanismReport& r) {
                              return HcmsPlausible(std::get<HcmsRecord>(r), g,
                                                   d)
                                         ? 0
                                         : 1;
                            }};
    }
    return MembershipTest{name, [g](const MechanismReport& r) {
                            return ObhPlausible(std::get<ObhRecord>(r), g) ? 0
                                                                           : 1;
                          }};
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown attack '", name, "'"));
}

absl::StatusOr<AuditReport> RunAudit(const AuditConfig& config) {
  absl::StatusOr<Mechanism> mech = BuildMechanism(config.mechanism);
  if (!mech.ok()) return mech.status();
  absl::StatusOr<MembershipTest> test =
      BuildAttack(config.attack, config.mechanism, config.x0, config.x1);
  if (!test.ok()) return test.status();
  absl::StatusOr<AuditReport> report =
      AuditEpsilonLb(*mech, *test, config.x0, config.x1, config.options);
  if (!report.ok()) return report.status();
  report->mechanism = config.mechanism.name;
  return report;
}

absl::StatusOr<std::string> RunExperimentConfig(
    absl::string_view text, std::optional<uint64_t> seed_override,
    Execution exec) {
  absl::StatusOr<json> parsed = ParseJson(text);
  if (!parsed.ok()) return parsed.status();
  const json& j = *parsed;
  if (!j.is_object()) return absl::InvalidArgumentError("line 1: config must be a JSON object");
  Fields f(j, text);
  std::string name;
  DPF_RETURN_IF_ERROR(f.String("experiment", name, true));
  uint64_t seed = 0;
  DPF_RETURN_IF_ERROR(f.Unsigned("master_seed", seed, false));
  if (seed_override) seed = *seed_override;
  int64_t trials = 10000;
  DPF_RETURN_IF_ERROR(f.Integer("trials", trials, false));
  double epsilon = 1.0, range = 1.0, sigma = 1.0, offset = 0.0;
  int64_t d = 2, k = 1, m = 1, threshold = 0, window = kDefaultGaussWindow,
          domain_max = 100;
  DPF_RETURN_IF_ERROR(f.Number("epsilon", epsilon, false));
  DPF_RETURN_IF_ERROR(f.Number("range", range, false));
  DPF_RETURN_IF_ERROR(f.Number("sigma", sigma, false));
  DPF_RETURN_IF_ERROR(f.Number("offset", offset, false));
  DPF_RETURN_IF_ERROR(f.Integer("d", d, false));
  DPF_RETURN_IF_ERROR(f.Integer("k", k, false));
  DPF_RETURN_IF_ERROR(f.Integer("m", m, false));
  DPF_RETURN_IF_ERROR(f.Integer("threshold", threshold, false));
  DPF_RETURN_IF_ERROR(f.Integer("window", window, false));
  DPF_RETURN_IF_ERROR(f.Integer("domain_max", domain_max, false));
  std::string input = "x";
  DPF_RETURN_IF_ERROR(f.String("input", input, false));

  nlohmann::ordered_json out;
  out["experiment"] = name;
  out["master_seed"] = seed;
  auto put_confusion = [&](const ConfusionMatrix& c) {
    out["tn"] = c.tn;
    out["fp"] = c.fp;
    out["fn"] = c.fn;
    out["tp"] = c.tp;
    out["fpr"] = c.fpr();
    out["tpr"] = c.tpr();
    out["balanced_accuracy"] = c.balanced_accuracy();
  };
  auto put_rate = [&](const char* key, const Rate& r) {
    out[key] = {{"hits", r.hits},
                {"trials", r.trials},
                {"rate", r.value()},
                {"standard_error", r.standard_error()}};
  };
  if (name == "phi_lap_rates") {
    out["epsilon"] = epsilon;
    absl::StatusOr<ConfusionMatrix> c = PhiLapRates(epsilon, range, trials, seed, exec);
    if (!c.ok()) return c.status();
    put_confusion(*c);
  } else if (name == "age_reconstruction") {
    absl::StatusOr<AgeReconstructionResult> r =
        AgeReconstruction(m, epsilon, range, domain_max, trials, seed, exec);
    if (!r.ok()) return r.status();
    out["lambda"] = range / epsilon;
    put_rate("singleton", r->singleton);
    put_rate("contains", r->contains);
  } else if (name == "phi_gauss_rates") {
    absl::StatusOr<ConfusionMatrix> c =
        PhiGaussRates(offset, sigma, static_cast<int>(window), trials, seed, exec);
    if (!c.ok()) return c.status();
    put_confusion(*c);
  } else if (name == "symohe_hamming") {
    absl::StatusOr<Rate> r = SymOheHamming(epsilon, d, threshold, trials, seed, exec);
    if (!r.ok()) return r.status();
    put_rate("within_threshold", *r);
  } else if (name == "cms_retention") {
    absl::StatusOr<Rate> r = CmsRetention(input, epsilon, d, k, trials, seed, exec);
    if (!r.ok()) return r.status();
    put_rate("retained", *r);
  } else if (name == "dzk_attack") {
    absl::StatusOr<ConfusionMatrix> c =
        DzkAttack(sigma, d, trials, static_cast<int>(window), seed, exec);
    if (!c.ok()) return c.status();
    put_confusion(*c);
  } else {
    return ErrorAt(text, "experiment", absl::StrCat("unknown experiment '", name, "'"));
  }
  return out.dump(2) + "\n";
}

absl::StatusOr<SimulateConfig> ParseSimulateConfig(absl::string_view text) {
  absl::StatusOr<json> parsed = ParseJson(text);
  if (!parsed.ok()) return parsed.status();
  const json& j = *parsed;
  if (!j.is_object()) return absl::InvalidArgumentError("line 1: config must be a JSON object");
  SimulateConfig c;
  SecAggConfig& s = c.secagg;
  Fields f(j, text);
  std::string mode;
  DPF_RETURN_IF_ERROR(f.String("mode", mode, true));
  absl::StatusOr<SecAggMode> parsed_mode = ParseSecAggMode(mode);
  if (!parsed_mode.ok()) return ErrorAt(text, "mode", parsed_mode.status().message());
  s.mode = *parsed_mode;
  DPF_RETURN_IF_ERROR(f.Number("epsilon", s.epsilon, false));
  DPF_RETURN_IF_ERROR(f.Integer("d", s.d, true));
  DPF_RETURN_IF_ERROR(f.Unsigned("prime", s.prime, false));
  DPF_RETURN_IF_ERROR(f.Number("sigma", s.sigma, false));
  DPF_RETURN_IF_ERROR(f.Number("sigma_ss", s.sigma_ss, false));
  DPF_RETURN_IF_ERROR(f.Integer("n_clients", s.n_clients, true));
  c.has_seed = j.contains("master_seed");
  DPF_RETURN_IF_ERROR(f.Unsigned("master_seed", c.master_seed, false));
  DPF_RETURN_IF_ERROR(f.Integer("dzk_runs", c.dzk_runs, false));
  if (absl::Status st = s.Validate(); !st.ok()) {
    return absl::InvalidArgumentError(absl::StrCat("line 1: ", st.message()));
  }
  if (j.contains("inputs")) {
    if (!j["inputs"].is_array()) return ErrorAt(text, "inputs", "'inputs' must be an array");
    for (const json& v : j["inputs"]) {
      if (!v.is_number_integer()) return ErrorAt(text, "inputs", "'inputs' must hold integers");
      c.inputs.push_back(v.get<int64_t>());
    }
  }
  if (s.mode == SecAggMode::kPrioPlusPlus) {
    if (!j.contains("vector_input")) {
      return ErrorAt(text, "mode", "prio_plusplus needs 'vector_input'");
    }
    absl::StatusOr<std::vector<double>> v = ParseVector(j["vector_input"], s.d);
    if (!v.ok()) return ErrorAt(text, "vector_input", v.status().message());
    c.vector_input = *std::move(v);
  }
  return c;
}

absl::StatusOr<std::string> RunSimulateConfig(const SimulateConfig& config) {
  const SecAggConfig& s = config.secagg;
  std::vector<std::vector<double>> vectors;
  if (s.mode == SecAggMode::kPrioPlusPlus) {
    vectors.assign(s.n_clients, config.vector_input);
  }
  absl::StatusOr<SimulationResult> r =
      Simulate(s, config.master_seed, config.inputs, vectors);
  if (!r.ok()) return r.status();

  nlohmann::ordered_json out;
  out["mode"] = SecAggModeName(s.mode);
  out["n_clients"] = s.n_clients;
  out["d"] = s.d;
  out["master_seed"] = config.master_seed;
  if (s.mode == SecAggMode::kPrioPlusPlus) {
    out["sigma"] = s.sigma;
    out["sigma_ss"] = s.sigma_ss;
    nlohmann::ordered_json seeds = nlohmann::ordered_json::array();
    for (const GaussShareBundle& b : r->gauss_bundles) seeds.push_back(b.helper_seed);
    out["leader_view"] = {{"sum", r->leader_sum}};
    out["helper_view"] = {{"sum", r->helper_sum}, {"seeds", seeds}};
    out["combined"] = {{"sum", r->combined_sum}};
    if (config.dzk_runs > 0) {
      const uint64_t seed =
          RngStream::DeriveSeed(config.master_seed, kMonteCarloStreamIndex - 1);
      absl::StatusOr<ConfusionMatrix> c =
          DzkAttack(s.sigma_ss, s.d, config.dzk_runs, kDefaultGaussWindow, seed,
                    Execution::kParallel);
      if (!c.ok()) return c.status();
      out["dzk_attack"] = {{"runs", config.dzk_runs},
                           {"tn", c->tn},
                           {"fp", c->fp},
                           {"fn", c->fn},
                           {"tp", c->tp},
                           {"balanced_accuracy", c->balanced_accuracy()}};
    }
    return out.dump(2) + "\n";
  }
  if (s.mode == SecAggMode::kPrioSymOhe) out["epsilon"] = s.epsilon;
  out["prime"] = s.prime;
  nlohmann::ordered_json leader = nlohmann::ordered_json::array();
  nlohmann::ordered_json helper = nlohmann::ordered_json::array();
  nlohmann::ordered_json clients = nlohmann::ordered_json::array();
  int64_t exact = 0;
  for (size_t i = 0; i < r->field_bundles.size(); ++i) {
    leader.push_back(r->field_bundles[i].leader_share);
    helper.push_back(r->field_bundles[i].helper_share);
    clients.push_back({{"client", i},
                       {"input", r->inputs[i]},
                       {"reconstructed", r->reconstructed[i]},
                       {"exact_recovery", static_cast<bool>(r->exact_recovery[i])},
                       {"accepted", static_cast<bool>(r->accepted[i])}});
    exact += r->exact_recovery[i];
  }
  out["leader_view"] = {{"shares", leader}, {"aggregate", r->leader_aggregate}};
  out["helper_view"] = {{"shares", helper}, {"aggregate", r->helper_aggregate}};
  out["combined"] = {{"aggregate", r->combined_aggregate}, {"clients", clients}};
  out["exact_recovery_count"] = exact;
  out["exact_recovery_rate"] =
      static_cast<double>(exact) / static_cast<double>(s.n_clients);
  return out.dump(2) + "\n";
}

}  // namespace dpforensics
