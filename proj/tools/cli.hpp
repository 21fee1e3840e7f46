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

#ifndef CFGROWTH_TOOLS_CLI_HPP_
#define CFGROWTH_TOOLS_CLI_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cfgrowth::cli {

// Stable exit-code map.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitInternal = 4;

inline constexpr std::size_t kDefaultBits = 2048;
inline constexpr std::size_t kDefaultMaxDigits = 1'000'000;

enum class Format { json, jsonl, csv };

struct RunConfig {
  std::string command;            // "trace", "construct z", "jarnik dim", ...
  std::vector<std::string> args;  // echoed into every output header

  // Settings resolved as flag > environment > config file > default.
  std::size_t bits = kDefaultBits;
  std::uint64_t seed = 0;
  std::size_t max_digits = kDefaultMaxDigits;
  Format format = Format::json;
  std::string output;             // empty: stdout
  std::size_t truncate_digits = 0;
  unsigned threads = 1;

  // Subcommand parameters, kept as text until execution.
  std::string rational;
  std::string cf;
  std::string cf_file;
  std::optional<std::size_t> upto;
  std::string z;
  std::string alpha;
  std::string mode = "every-step";
  bool jitter = false;
  std::size_t steps = 8;
  std::string tau;
  std::string eps = "0";
  std::string s;
  std::uint64_t terms = 10'000;
  std::size_t n = 300;
  std::size_t trials = 200;
  bool gauss = false;
  std::string per_trial;
  std::size_t count = 10'000;
  std::size_t depth = 1000;
  bool uniform = false;
  unsigned k_lo = 4;
  unsigned k_hi = 10;
};

using EnvLookup = std::function<std::optional<std::string>(std::string_view)>;

// Reads the process environment.
std::optional<std::string> process_env(std::string_view name);

// Thrown by parse() for help requests; carries the text to print.
struct HelpRequested {
  std::string text;
};

// Throws cfgrowth::Error (domain) on malformed or conflicting input.
RunConfig parse(const std::vector<std::string>& args, const EnvLookup& env);

// Runs the command, writing results to `out` (or to config.output) and
// diagnostics to `err`. Returns the exit code.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

// parse + execute with error-to-exit-code mapping.
int run(const std::vector<std::string>& args, const EnvLookup& env,
        std::ostream& out, std::ostream& err);

}  // namespace cfgrowth::cli

#endif  // CFGROWTH_TOOLS_CLI_HPP_
