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

#include "cfgrowth/serialize.hpp"

namespace cfgrowth::io {

nlohmann::ordered_json header_json(const Header& h) {
  nlohmann::ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["schema"] = kSchemaVersion;
  j["subcommand"] = h.subcommand;
  j["args"] = h.args;
  j["seed"] = std::to_string(h.seed);
  j["bits"] = h.bits;
  j["max_digits"] = h.max_digits;
  return j;
}

void write_csv_header(std::ostream& os, const Header& h) {
  os << "# tool=" << kToolName << " version=" << kToolVersion
     << " schema=" << kSchemaVersion << "\n";
  os << "# subcommand=" << h.subcommand << " seed=" << h.seed << " bits=" << h.bits
     << " max_digits=" << h.max_digits << "\n";
  os << "# args=";
  for (std::size_t i = 0; i < h.args.size(); ++i) os << (i ? " " : "") << h.args[i];
  os << "\n";
}

nlohmann::ordered_json quotients_json(const cf::CFExpansion& cf,
                                      std::size_t truncate_digits) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const BigInt& a : cf.quotients()) arr.push_back(format_bigint(a, truncate_digits));
  return arr;
}

std::vector<std::string> record_fields(const growth::GrowthRecord& rec,
                                       std::size_t truncate_digits) {
  return {
      std::to_string(rec.n),
      format_bigint(rec.a_next, truncate_digits),
      std::to_string(rec.q_bits),
      format_scientific(rec.error.lo, kErrorDigits, Rounding::down),
      format_scientific(rec.error.hi, kErrorDigits, Rounding::up),
      format_double(rec.r.lo),
      format_double(rec.r.hi),
      format_double(rec.s.lo),
      format_double(rec.s.hi),
  };
}

nlohmann::ordered_json record_json(const growth::GrowthRecord& rec,
                                   std::size_t truncate_digits) {
  const std::vector<std::string> fields = record_fields(rec, truncate_digits);
  const auto& cols = trace_columns();
  nlohmann::ordered_json j;
  for (std::size_t i = 0; i < cols.size(); ++i) j[cols[i]] = fields[i];
  return j;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_trace_csv(std::ostream& os, const Header& h,
                     const growth::GrowthTrace& trace, std::size_t truncate_digits) {
  write_csv_header(os, h);
  const auto& cols = trace_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";
  for (const auto& rec : trace) {
    const auto fields = record_fields(rec, truncate_digits);
    for (std::size_t i = 0; i < fields.size(); ++i) {
      os << (i ? "," : "") << csv_escape(fields[i]);
    }
    os << "\n";
  }
}

void write_trace_jsonl(std::ostream& os, const Header& h,
                       const growth::GrowthTrace& trace, std::size_t truncate_digits) {
  nlohmann::ordered_json head;
  head["header"] = header_json(h);
  os << head.dump() << "\n";
  for (const auto& rec : trace) os << record_json(rec, truncate_digits).dump() << "\n";
}

}  // namespace cfgrowth::io
