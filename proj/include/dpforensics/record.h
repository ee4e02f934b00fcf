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

// Analytics log records in the leaked CMS log shape:
//
//   {"key": "...", "parameters": {"epsilon": 4, "k": 65536, "m": 1024},
//    "records": ["11688,0000820000...", ...]}
//
// CMS entries are "j,hexbits". Hex digits are read MSB first: bit i is bit
// (7 - i % 8) of byte i / 8. Short strings and a trailing "..." are padded
// with zeros to m bits. HCMS entries are "j,l,y" with y in {-1, 1}.
// Logs written by this tool carry "provenance": "dpforensics-synthetic".

#ifndef DPFORENSICS_RECORD_H_
#define DPFORENSICS_RECORD_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dpforensics/sketch.h"

namespace dpforensics {

inline constexpr absl::string_view kSyntheticProvenance =
    "dpforensics-synthetic";

struct AnalyticsRecord {
  std::string key;
  double epsilon = 0.0;
  int64_t k = 1;
  int64_t m = 1;
  std::vector<std::string> records;
  std::string provenance;  // empty when absent

  friend bool operator==(const AnalyticsRecord&,
                         const AnalyticsRecord&) = default;
};

// INVALID_ARGUMENT ("MalformedRecord: ...") on bad JSON or missing fields.
absl::StatusOr<AnalyticsRecord> ParseRecord(absl::string_view json_text);
std::string SerializeRecord(const AnalyticsRecord& record);

// Hex digits for m bits, MSB first; ceil(m / 4) digits, lower-case.
std::string BitsToHex(const BitVector& bits);
absl::StatusOr<BitVector> HexToBits(absl::string_view hex, int64_t m);

absl::StatusOr<CmsRecord> ParseCmsEntry(absl::string_view entry, int64_t k,
                                        int64_t m);
std::string SerializeCmsEntry(const CmsRecord& record);

absl::StatusOr<HcmsRecord> ParseHcmsEntry(absl::string_view entry, int64_t k,
                                          int64_t m);
std::string SerializeHcmsEntry(const HcmsRecord& record);

}  // namespace dpforensics

#endif  // DPFORENSICS_RECORD_H_
