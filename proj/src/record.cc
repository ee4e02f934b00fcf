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

#include "dpforensics/record.h"

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"
#include "absl/strings/strip.h"
#include "json.hpp"

namespace dpforensics {
namespace {

using nlohmann::json;

absl::Status Malformed(absl::string_view what) {
  return absl::InvalidArgumentError(absl::StrCat("MalformedRecord: ", what));
}

int HexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

absl::StatusOr<uint32_t> ParseIndex(absl::string_view text, int64_t bound,
                                    absl::string_view name) {
  uint32_t v;
  if (!absl::SimpleAtoi(text, &v) || text.empty() ||
      !absl::ascii_isdigit(text.front())) {
    return Malformed(absl::StrCat(name, " '", text, "' is not an integer"));
  }
  if (static_cast<int64_t>(v) >= bound) {
    return Malformed(absl::StrCat(name, "=", v, " not in [0, ", bound, ")"));
  }
  return v;
}

}  // namespace

absl::StatusOr<AnalyticsRecord> ParseRecord(absl::string_view json_text) {
  json j = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) return Malformed("not a JSON object");
  AnalyticsRecord r;
  if (!j.contains("key") || !j["key"].is_string()) {
    return Malformed("missing string field 'key'");
  }
  r.key = j["key"].get<std::string>();
  if (!j.contains("parameters") || !j["parameters"].is_object()) {
    return Malformed("missing object field 'parameters'");
  }
  const json& p = j["parameters"];
  if (!p.contains("epsilon") || !p["epsilon"].is_number()) {
    return Malformed("parameters.epsilon must be a number");
  }
  if (!p.contains("k") || !p["k"].is_number_integer() ||
      p["k"].get<int64_t>() < 1) {
    return Malformed("parameters.k must be a positive integer");
  }
  if (!p.contains("m") || !p["m"].is_number_integer() ||
      p["m"].get<int64_t>() < 1) {
    return Malformed("parameters.m must be a positive integer");
  }
  r.epsilon = p["epsilon"].get<double>();
  r.k = p["k"].get<int64_t>();
  r.m = p["m"].get<int64_t>();
  if (!j.contains("records") || !j["records"].is_array()) {
    return Malformed("missing array field 'records'");
  }
  for (const json& e : j["records"]) {
    if (!e.is_string()) return Malformed("records must be strings");
    r.records.push_back(e.get<std::string>());
  }
  if (j.contains("provenance") && j["provenance"].is_string()) {
    r.provenance = j["provenance"].get<std::string>();
  }
  return r;
}

std::string SerializeRecord(const AnalyticsRecord& r) {
  nlohmann::ordered_json j;
  j["key"] = r.key;
  j["parameters"] = {{"epsilon", r.epsilon}, {"k", r.k}, {"m", r.m}};
  j["records"] = r.records;
  if (!r.provenance.empty()) j["provenance"] = r.provenance;
  return j.dump(2) + "\n";
}

std::string BitsToHex(const BitVector& bits) {
  static constexpr char kDigits[] = "0123456789abcdef";
  const size_t digits = (bits.size() + 3) / 4;
  std::string out(digits, '0');
  for (size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) {
      out[i / 4] = kDigits[HexValue(out[i / 4]) | (8 >> (i % 4))];
    }
  }
  return out;
}

absl::StatusOr<BitVector> HexToBits(absl::string_view hex, int64_t m) {
  if (!absl::ConsumeSuffix(&hex, "...")) absl::ConsumeSuffix(&hex, "…");
  if (static_cast<int64_t>(hex.size()) > (m + 3) / 4) {
    return Malformed(absl::StrCat("hex has ", hex.size(),
                                  " digits, more than m=", m, " bits"));
  }
  BitVector bits(m, 0);
  for (size_t c = 0; c < hex.size(); ++c) {
    const int v = HexValue(hex[c]);
    if (v < 0) return Malformed(absl::StrCat("invalid hex digit '", std::string(1, hex[c]), "'"));
    for (int b = 0; b < 4; ++b) {
      if (!(v & (8 >> b))) continue;
      const int64_t i = 4 * static_cast<int64_t>(c) + b;
      if (i >= m) return Malformed("set bit beyond m");
      bits[i] = 1;
    }
  }
  return bits;
}

absl::StatusOr<CmsRecord> ParseCmsEntry(absl::string_view entry, int64_t k,
                                        int64_t m) {
  const size_t comma = entry.find(',');
  if (comma == absl::string_view::npos) return Malformed("missing comma");
  absl::StatusOr<uint32_t> j = ParseIndex(entry.substr(0, comma), k, "j");
  if (!j.ok()) return j.status();
  absl::StatusOr<BitVector> bits = HexToBits(entry.substr(comma + 1), m);
  if (!bits.ok()) return bits.status();
  return CmsRecord{*std::move(bits), *j};
}

std::string SerializeCmsEntry(const CmsRecord& record) {
  return absl::StrCat(record.hash_index, ",", BitsToHex(record.bits));
}

absl::StatusOr<HcmsRecord> ParseHcmsEntry(absl::string_view entry, int64_t k,
                                          int64_t m) {
  std::vector<absl::string_view> parts = absl::StrSplit(entry, ',');
  if (parts.size() != 3) return Malformed("HCMS entry must be 'j,l,y'");
  absl::StatusOr<uint32_t> j = ParseIndex(parts[0], k, "j");
  if (!j.ok()) return j.status();
  absl::StatusOr<uint32_t> l = ParseIndex(parts[1], m, "l");
  if (!l.ok()) return l.status();
  int y;
  if (!absl::SimpleAtoi(parts[2], &y) || (y != 1 && y != -1)) {
    return Malformed(absl::StrCat("y '", parts[2], "' must be -1 or 1"));
  }
  return HcmsRecord{y, *j, *l};
}

std::string SerializeHcmsEntry(const HcmsRecord& record) {
  return absl::StrCat(record.hash_index, ",", record.bit_index, ",", record.y);
}

}  // namespace dpforensics
