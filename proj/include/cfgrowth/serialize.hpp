// Copyright 2026 The cfgrowth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Outward formats: JSON/JSONL/CSV. Big integers are always decimal strings;
// inexact quantities are either exact rational strings or directed-rounded
// decimals.

#ifndef CFGROWTH_SERIALIZE_HPP_
#define CFGROWTH_SERIALIZE_HPP_

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cfgrowth/cf_core.hpp"
#include "cfgrowth/growth_stats.hpp"
#include "cfgrowth/numeric.hpp"

namespace cfgrowth::io {

inline constexpr const char* kToolName = "cfgrowth";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;
// Significant digits for directed-rounded decimal enclosures.
inline constexpr int kErrorDigits = 17;

struct Header {
  std::string subcommand;
  std::vector<std::string> args;  // echo of the command line after the tool name
  std::uint64_t seed = 0;
  std::size_t bits = 0;
  std::size_t max_digits = 0;
};

nlohmann::ordered_json header_json(const Header& h);
// "# key=value" lines for CSV outputs.
void write_csv_header(std::ostream& os, const Header& h);

// JSON array of decimal strings. `truncate_digits` > 0 elides long values.
nlohmann::ordered_json quotients_json(const cf::CFExpansion& cf,
                                      std::size_t truncate_digits = 0);

inline const std::vector<std::string>& trace_columns() {
  static const std::vector<std::string> cols{
      "n", "a_next", "q_bits", "err_lo", "err_hi", "R_lo", "R_hi", "S_lo", "S_hi"};
  return cols;
}

// One trace record with every field as a string, in trace_columns() order.
std::vector<std::string> record_fields(const growth::GrowthRecord& rec,
                                       std::size_t truncate_digits = 0);
nlohmann::ordered_json record_json(const growth::GrowthRecord& rec,
                                   std::size_t truncate_digits = 0);

void write_trace_csv(std::ostream& os, const Header& h,
                     const growth::GrowthTrace& trace,
                     std::size_t truncate_digits = 0);
void write_trace_jsonl(std::ostream& os, const Header& h,
                       const growth::GrowthTrace& trace,
                       std::size_t truncate_digits = 0);

// Quotes a CSV field when it contains separators or quotes.
std::string csv_escape(const std::string& field);

}  // namespace cfgrowth::io

#endif  // CFGROWTH_SERIALIZE_HPP_
