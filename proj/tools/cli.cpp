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

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "cfgrowth/cf_core.hpp"
#include "cfgrowth/constructors.hpp"
#include "cfgrowth/dimension_lab.hpp"
#include "cfgrowth/error.hpp"
#include "cfgrowth/growth_stats.hpp"
#include "cfgrowth/jarnik.hpp"
#include "cfgrowth/numeric.hpp"
#include "cfgrowth/sampler.hpp"
#include "cfgrowth/serialize.hpp"

namespace cfgrowth::cli {
namespace {

using nlohmann::ordered_json;

std::uint64_t parse_u64(std::string_view key, const std::string& text) {
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw_domain("invalid value for " + std::string(key) + ": '" + text +
                 "' (expected a non-negative integer)");
  }
  return v;
}

bool parse_bool(std::string_view key, const std::string& text) {
  if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
  if (text == "0" || text == "false" || text == "no" || text == "off") return false;
  throw_domain("invalid value for " + std::string(key) + ": '" + text +
               "' (expected true or false)");
}

Format parse_format(const std::string& text) {
  if (text == "json") return Format::json;
  if (text == "jsonl") return Format::jsonl;
  if (text == "csv") return Format::csv;
  throw_domain("invalid value for format: '" + text + "' (expected json, jsonl or csv)");
}

using Setter = void (*)(RunConfig&, const std::string&);

// Every settable key, shared by flags (--key) and config files (key=value).
const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table{
      {"bits", [](RunConfig& c, const std::string& v) { c.bits = parse_u64("bits", v); }},
      {"seed", [](RunConfig& c, const std::string& v) { c.seed = parse_u64("seed", v); }},
      {"max-digits",
       [](RunConfig& c, const std::string& v) { c.max_digits = parse_u64("max-digits", v); }},
      {"format", [](RunConfig& c, const std::string& v) { c.format = parse_format(v); }},
      {"output", [](RunConfig& c, const std::string& v) { c.output = v; }},
      {"truncate-digits",
       [](RunConfig& c, const std::string& v) {
         c.truncate_digits = parse_u64("truncate-digits", v);
       }},
      {"threads",
       [](RunConfig& c, const std::string& v) {
         const auto t = parse_u64("threads", v);
         if (t < 1 || t > 1024) throw_domain("threads must lie in [1, 1024]");
         c.threads = static_cast<unsigned>(t);
       }},
      {"rational", [](RunConfig& c, const std::string& v) { c.rational = v; }},
      {"cf", [](RunConfig& c, const std::string& v) { c.cf = v; }},
      {"cf-file", [](RunConfig& c, const std::string& v) { c.cf_file = v; }},
      {"upto", [](RunConfig& c, const std::string& v) { c.upto = parse_u64("upto", v); }},
      {"z", [](RunConfig& c, const std::string& v) { c.z = v; }},
      {"alpha", [](RunConfig& c, const std::string& v) { c.alpha = v; }},
      {"mode",
       [](RunConfig& c, const std::string& v) {
         if (v != "every-step" && v != "sparse") {
           throw_domain("invalid value for mode: '" + v + "' (expected every-step or sparse)");
         }
         c.mode = v;
       }},
      {"jitter", [](RunConfig& c, const std::string& v) { c.jitter = parse_bool("jitter", v); }},
      {"steps", [](RunConfig& c, const std::string& v) { c.steps = parse_u64("steps", v); }},
      {"tau", [](RunConfig& c, const std::string& v) { c.tau = v; }},
      {"eps", [](RunConfig& c, const std::string& v) { c.eps = v; }},
      {"s", [](RunConfig& c, const std::string& v) { c.s = v; }},
      {"terms", [](RunConfig& c, const std::string& v) { c.terms = parse_u64("terms", v); }},
      {"n", [](RunConfig& c, const std::string& v) { c.n = parse_u64("n", v); }},
      {"trials", [](RunConfig& c, const std::string& v) { c.trials = parse_u64("trials", v); }},
      {"gauss", [](RunConfig& c, const std::string& v) { c.gauss = parse_bool("gauss", v); }},
      {"per-trial", [](RunConfig& c, const std::string& v) { c.per_trial = v; }},
      {"count", [](RunConfig& c, const std::string& v) { c.count = parse_u64("count", v); }},
      {"depth", [](RunConfig& c, const std::string& v) { c.depth = parse_u64("depth", v); }},
      {"uniform",
       [](RunConfig& c, const std::string& v) { c.uniform = parse_bool("uniform", v); }},
      {"k-lo",
       [](RunConfig& c, const std::string& v) {
         c.k_lo = static_cast<unsigned>(parse_u64("k-lo", v));
       }},
      {"k-hi",
       [](RunConfig& c, const std::string& v) {
         c.k_hi = static_cast<unsigned>(parse_u64("k-hi", v));
       }},
  };
  return table;
}

void apply(RunConfig& c, std::string key, const std::string& value) {
  std::replace(key.begin(), key.end(), '_', '-');
  auto it = setters().find(key);
  if (it == setters().end()) throw_domain("unknown configuration key '" + key + "'");
  it->second(c, value);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_domain("cannot read config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#' || t.front() == ';') continue;
    if (t.front() == '[') continue;  // section names are ignored
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw_domain(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(std::string_view(t).substr(0, eq));
    if (key == "config") throw_domain(path + ": nested config files are not supported");
    if (setters().count(key) == 0) {
      std::string k = key;
      std::replace(k.begin(), k.end(), '_', '-');
      if (setters().count(k) == 0) {
        throw_domain(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
      }
    }
    entries.emplace_back(std::move(key), trim(std::string_view(t).substr(eq + 1)));
  }
  return entries;
}

struct Registered {
  std::string key;
  CLI::Option* option;
  bool is_flag;
};

void add_value(CLI::App* app, std::vector<Registered>& reg, const std::string& key,
               const std::string& help) {
  reg.push_back({key, app->add_option("--" + key, help)->allow_extra_args(false), false});
}

void add_flag(CLI::App* app, std::vector<Registered>& reg, const std::string& key,
              const std::string& help) {
  reg.push_back({key, app->add_flag("--" + key, help), true});
}

// ---- execution -----------------------------------------------------------

struct Result {
  ordered_json body = ordered_json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

Rational rational_arg(std::string_view key, const std::string& text) {
  if (text.empty()) throw_domain("missing required --" + std::string(key));
  try {
    return parse_rational(text);
  } catch (const Error& e) {
    throw_domain("invalid value for --" + std::string(key) + ": " + e.what());
  }
}

cf::CFExpansion parse_quotient_list(const std::string& text) {
  std::vector<BigInt> qs;
  std::string token;
  auto flush = [&] {
    if (!token.empty()) qs.push_back(parse_bigint(token));
    token.clear();
  };
  for (char ch : text) {
    if (ch == ',' || ch == ';' || ch == ' ' || ch == '\n' || ch == '\t' || ch == '\r' ||
        ch == '[' || ch == ']' || ch == '"') {
      flush();
    } else {
      token += ch;
    }
  }
  flush();
  if (qs.empty()) throw_domain("empty continued fraction");
  return cf::CFExpansion(std::move(qs));
}

cf::CFExpansion cf_from_json(const nlohmann::json& j) {
  const nlohmann::json& arr = j.is_object() && j.contains("quotients") ? j["quotients"] : j;
  if (!arr.is_array()) throw_domain("cf file: expected an array of quotients");
  std::vector<BigInt> qs;
  for (const auto& v : arr) {
    if (v.is_string()) {
      qs.push_back(parse_bigint(v.get<std::string>()));
    } else if (v.is_number_unsigned()) {
      qs.emplace_back(std::to_string(v.get<std::uint64_t>()));
    } else {
      throw_domain("cf file: quotients must be decimal strings or integers");
    }
  }
  if (qs.empty()) throw_domain("empty continued fraction");
  return cf::CFExpansion(std::move(qs));
}

cf::CFExpansion input_cf(const RunConfig& c) {
  if (!c.cf.empty()) return parse_quotient_list(c.cf);
  std::ifstream in(c.cf_file, std::ios::binary);
  if (!in) throw_domain("cannot read cf file '" + c.cf_file + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  const auto j = nlohmann::json::parse(text, nullptr, false);
  if (!j.is_discarded() && (j.is_array() || j.is_object())) return cf_from_json(j);
  return parse_quotient_list(text);
}

ordered_json quotient_array(const cf::CFExpansion& cf, std::size_t truncate) {
  return io::quotients_json(cf, truncate);
}

void quotient_rows(Result& r, const cf::CFExpansion& cf, std::size_t truncate) {
  r.columns = {"n", "quotient"};
  for (std::size_t i = 1; i <= cf.size(); ++i) {
    r.rows.push_back({std::to_string(i), format_bigint(cf.a(i), truncate)});
  }
}

Result run_expand(const RunConfig& c, std::size_t truncate) {
  const Rational x = rational_arg("rational", c.rational);
  const cf::CFExpansion cf = cf::expand_rational(x);
  Result r;
  r.body["rational"] = to_string(x);
  r.body["quotients"] = quotient_array(cf, truncate);
  quotient_rows(r, cf, truncate);
  return r;
}

Result run_eval(const RunConfig& c, std::size_t truncate) {
  const cf::CFExpansion cf = input_cf(c);
  const Rational v = cf::evaluate(cf);
  Result r;
  r.body["length"] = cf.size();
  r.body["value"] = to_string(v);
  r.body["value_lo"] = format_scientific(v, io::kErrorDigits, Rounding::down);
  r.body["value_hi"] = format_scientific(v, io::kErrorDigits, Rounding::up);
  r.columns = {"value"};
  r.rows.push_back({to_string(v)});
  (void)truncate;
  return r;
}

Result run_convergents(const RunConfig& c, std::size_t truncate) {
  const cf::CFExpansion cf = input_cf(c);
  const std::size_t upto = c.upto.value_or(cf.size());
  if (upto < 1 || upto > cf.size()) {
    throw_domain("--upto must lie in [1, " + std::to_string(cf.size()) + "]");
  }
  Result r;
  r.columns = {"n", "p", "q"};
  ordered_json list = ordered_json::array();
  for (const auto& conv : cf::convergents(cf, upto)) {
    std::vector<std::string> row{std::to_string(conv.index), format_bigint(conv.p, truncate),
                                 format_bigint(conv.q, truncate)};
    list.push_back({{"n", row[0]}, {"p", row[1]}, {"q", row[2]}});
    r.rows.push_back(std::move(row));
  }
  r.body["convergents"] = std::move(list);
  return r;
}

Result run_trace(const RunConfig& c, std::size_t truncate) {
  const cf::CFExpansion cf = input_cf(c);
  Result r;
  r.columns = io::trace_columns();
  ordered_json list = ordered_json::array();
  growth::for_each_record(cf, [&](const growth::GrowthRecord& rec) {
    list.push_back(io::record_json(rec, truncate));
    r.rows.push_back(io::record_fields(rec, truncate));
  });
  if (r.rows.empty()) throw_domain("trace needs at least two quotients");
  r.body["length"] = cf.size();
  r.body["records"] = std::move(list);
  return r;
}

void describe_expansion(Result& r, const cf::CFExpansion& cf, std::size_t truncate) {
  cf::ConvergentStepper st;
  for (const auto& a : cf.quotients()) st.advance(a);
  r.body["length"] = cf.size();
  r.body["q_digits"] = decimal_digits(st.q());
  r.body["quotients"] = quotient_array(cf, truncate);
  quotient_rows(r, cf, truncate);
}

construct::ConstructionPlan plan_of(const RunConfig& c, Rational z) {
  construct::ConstructionPlan plan;
  plan.z = std::move(z);
  plan.mode = c.mode == "sparse" ? construct::Mode::sparse : construct::Mode::every_step;
  plan.jitter = c.jitter;
  plan.seed = c.seed;
  plan.max_digits = c.max_digits;
  return plan;
}

Result run_construct(const RunConfig& c, const std::string& which, std::size_t truncate) {
  Result r;
  cf::CFExpansion cf;
  if (which == "z") {
    const Rational z = rational_arg("z", c.z);
    auto plan = plan_of(c, z);
    plan.validate();
    cf = z == 1 ? construct::construct_f_one(c.steps, c.max_digits) : construct::construct_f(plan);
    r.body["z"] = to_string(z);
  } else if (which == "alpha") {
    const Rational alpha = rational_arg("alpha", c.alpha);
    cf = construct::construct_g(alpha, plan_of(c, Rational(0)));
    r.body["alpha"] = to_string(alpha);
  } else {
    cf = construct::construct_f_one(c.steps, c.max_digits);
    r.body["steps"] = c.steps;
  }
  if (which != "one") {
    r.body["mode"] = c.mode;
    r.body["jitter"] = c.jitter;
  }
  describe_expansion(r, cf, truncate);
  return r;
}

std::string measure_name(jarnik::Measure m) {
  return m == jarnik::Measure::infinity ? "infinity" : "zero";
}

Result run_jarnik(const RunConfig& c, const std::string& which) {
  Result r;
  if (which == "dim") {
    if (c.z.empty() == c.alpha.empty()) throw_domain("jarnik dim needs exactly one of --z, --alpha");
    jarnik::DimensionResult d;
    if (!c.z.empty()) {
      const Rational z = rational_arg("z", c.z);
      d = jarnik::dim_f(z);
      r.body["z"] = to_string(z);
    } else {
      const Rational alpha = rational_arg("alpha", c.alpha);
      d = jarnik::dim_g(alpha);
      r.body["alpha"] = to_string(alpha);
    }
    switch (d.kind) {
      case jarnik::DimensionKind::value:
        r.body["dimension"] = to_string(d.dimension);
        r.body["measure"] = d.measure_infinite ? "infinite" : "finite";
        break;
      case jarnik::DimensionKind::full_measure:
        r.body["dimension"] = to_string(d.dimension);
        r.body["measure"] = "full";
        break;
      case jarnik::DimensionKind::empty:
        r.body["dimension"] = nullptr;
        r.body["measure"] = "empty";
        break;
    }
    r.columns = {"dimension", "measure"};
    r.rows.push_back({r.body["dimension"].is_null() ? "" : r.body["dimension"].get<std::string>(),
                      r.body["measure"].get<std::string>()});
    return r;
  }

  const jarnik::PsiSpec spec(rational_arg("tau", c.tau), rational_arg("eps", c.eps));
  const Rational s = rational_arg("s", c.s);
  r.body["tau"] = to_string(spec.tau());
  r.body["eps"] = to_string(spec.eps());
  r.body["s"] = to_string(s);
  if (which == "verdict") {
    const auto v = jarnik::measure_verdict(spec, s);
    r.body["verdict"] = measure_name(v.classification);
    r.body["s_star"] = to_string(jarnik::critical_exponent(spec));
    r.body["series_exponent"] = to_string(v.series_exponent);
    ordered_json sums = ordered_json::array();
    r.columns = {"N", "partial_sum"};
    for (const auto& [n, value] : v.partial_sums) {
      const std::string text = format_double(static_cast<double>(value));
      sums.push_back(ordered_json::array({n, text}));
      r.rows.push_back({std::to_string(n), text});
    }
    r.body["partial_sums"] = std::move(sums);
  } else {
    if (c.terms < 1) throw_domain("--terms must be >= 1");
    const std::string text =
        format_double(static_cast<double>(jarnik::partial_sum(spec, s, c.terms, c.threads)));
    r.body["terms"] = c.terms;
    r.body["partial_sum"] = text;
    r.columns = {"N", "partial_sum"};
    r.rows.push_back({std::to_string(c.terms), text});
  }
  return r;
}

ordered_json aggregate_json(const sampler::Aggregate& a) {
  return {{"mean", a.mean},       {"median", a.median},   {"stddev", a.stddev},
          {"ci95_lo", a.ci95_lo}, {"ci95_hi", a.ci95_hi}};
}

Result run_sample(const RunConfig& c) {
  sampler::SampleBudget budget;
  budget.bits = c.bits;
  budget.n_target = c.n;
  const auto mc = sampler::monte_carlo(c.trials, c.n, budget, c.seed, c.threads, c.gauss);
  Result r;
  r.body["trials"] = mc.trials;
  r.body["n"] = mc.n;
  r.body["bits"] = mc.budget.bits;
  r.body["guard_slack"] = mc.budget.guard_slack;
  r.body["gauss_warmup"] = mc.gauss_warmup;
  r.body["resampled"] = mc.resampled;
  r.body["reference_error_rate"] = sampler::kLevyErrorRate;
  r.body["log_a_rate"] = aggregate_json(mc.log_a_rate);
  r.body["error_rate"] = aggregate_json(mc.error_rate);
  r.body["r_ratio"] = aggregate_json(mc.r_ratio);
  r.columns = {"trial", "seed", "log_a_rate", "error_rate", "r_ratio"};
  for (std::size_t i = 0; i < mc.per_trial.size(); ++i) {
    const auto& t = mc.per_trial[i];
    r.rows.push_back({std::to_string(i), std::to_string(mc.trial_seeds[i]),
                      format_double(t.log_a_rate), format_double(t.error_rate),
                      format_double(t.r_ratio)});
  }
  return r;
}

Result run_boxdim(const RunConfig& c) {
  if (c.uniform == !c.z.empty()) throw_domain("boxdim needs exactly one of --z, --uniform");
  if (c.k_lo >= c.k_hi) throw_domain("--k-lo must be below --k-hi");
  dimlab::PointCloud cloud;
  Result r;
  if (c.uniform) {
    cloud = dimlab::uniform_cloud(c.count, 64, c.seed);
    r.body["cloud"] = "uniform";
  } else {
    const Rational z = rational_arg("z", c.z);
    cloud = dimlab::point_cloud(z, c.count, c.depth, c.seed);
    r.body["cloud"] = "constructed";
    r.body["z"] = to_string(z);
    r.body["depth"] = c.depth;
  }
  std::vector<unsigned> ks;
  for (unsigned k = 1; k <= c.k_hi; ++k) ks.push_back(k);
  const auto counts = dimlab::box_counts(cloud, ks);
  const auto fit = dimlab::slope_fit(counts, c.k_lo, c.k_hi);
  r.body["requested"] = cloud.requested;
  r.body["points"] = cloud.points.size();
  r.body["duplicates"] = cloud.duplicates;
  r.body["certified_bits"] = cloud.certified_bits;
  r.body["window"] = {fit.k_lo, fit.k_hi};
  r.body["estimate"] = fit.estimate;
  r.body["r_squared"] = fit.r_squared;
  r.body["degenerate"] = fit.degenerate;
  r.body["caveat"] = std::string(dimlab::kCaveat);
  ordered_json list = ordered_json::array();
  r.columns = {"k", "delta", "count"};
  for (const auto& bc : counts) {
    const std::string delta = "1/" + BigInt(BigInt(1) << bc.k).get_str();
    list.push_back({{"k", bc.k}, {"delta", delta}, {"count", bc.count}});
    r.rows.push_back({std::to_string(bc.k), delta, std::to_string(bc.count)});
  }
  r.body["counts"] = std::move(list);
  return r;
}

std::string render(const RunConfig& c, const Result& r) {
  io::Header h{c.command, c.args, c.seed, c.bits, c.max_digits};
  std::ostringstream os;
  switch (c.format) {
    case Format::json: {
      ordered_json j;
      j["header"] = io::header_json(h);
      for (const auto& [k, v] : r.body.items()) j[k] = v;
      os << j.dump(2) << "\n";
      break;
    }
    case Format::jsonl: {
      os << ordered_json{{"header", io::header_json(h)}}.dump() << "\n";
      if (r.columns.empty()) {
        os << r.body.dump() << "\n";
      } else {
        for (const auto& row : r.rows) {
          ordered_json j;
          for (std::size_t i = 0; i < r.columns.size(); ++i) j[r.columns[i]] = row[i];
          os << j.dump() << "\n";
        }
      }
      break;
    }
    case Format::csv: {
      io::write_csv_header(os, h);
      for (std::size_t i = 0; i < r.columns.size(); ++i) {
        os << (i ? "," : "") << io::csv_escape(r.columns[i]);
      }
      os << "\n";
      for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          os << (i ? "," : "") << io::csv_escape(row[i]);
        }
        os << "\n";
      }
      break;
    }
  }
  return os.str();
}

// Writes next to the target and renames, so a failed run never leaves a
// partial file behind.
void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".partial";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw_domain("cannot open output file '" + path + "'");
    f << content;
    f.flush();
    if (!f) {
      f.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw_budget("failed writing output file '" + path + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw_domain("cannot move output into place at '" + path + "'");
  }
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return kExitUsage;
    case ErrorKind::budget: return kExitBudget;
    case ErrorKind::invariant: return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace

std::optional<std::string> process_env(std::string_view name) {
  const char* v = std::getenv(std::string(name).c_str());
  if (v == nullptr) return std::nullopt;
  return std::string(v);
}

RunConfig parse(const std::vector<std::string>& args, const EnvLookup& env) {
  CLI::App app{"Continued-fraction growth toolkit", io::kToolName};
  app.set_version_flag("--version", io::kToolVersion);
  app.fallthrough();
  app.require_subcommand(1);

  std::vector<Registered> reg;
  std::string config_path;
  app.add_option("--config", config_path, "key=value configuration file");
  add_value(&app, reg, "bits", "dyadic precision in bits (env CFG_BITS)");
  add_value(&app, reg, "seed", "master seed (env CFG_SEED)");
  add_value(&app, reg, "max-digits", "digit budget for denominators");
  add_value(&app, reg, "format", "json, jsonl or csv");
  add_value(&app, reg, "output", "write to this file instead of stdout");
  add_value(&app, reg, "truncate-digits", "elide long integers on stdout");
  add_value(&app, reg, "threads", "worker threads");

  auto* expand = app.add_subcommand("expand", "continued fraction of a rational");
  add_value(expand, reg, "rational", "p/q or decimal in (0,1)");

  auto add_cf_input = [&](CLI::App* sub) {
    add_value(sub, reg, "cf", "comma-separated partial quotients");
    add_value(sub, reg, "cf-file", "file holding partial quotients");
  };
  auto* eval = app.add_subcommand("eval", "exact value of a finite expansion");
  add_cf_input(eval);
  auto* convergents = app.add_subcommand("convergents", "convergents p_n/q_n");
  add_cf_input(convergents);
  add_value(convergents, reg, "upto", "last index");
  auto* trace = app.add_subcommand("trace", "growth ratios along an expansion");
  add_cf_input(trace);

  auto* construct = app.add_subcommand("construct", "build expansions with prescribed growth");
  construct->require_subcommand(1);
  auto* cz = construct->add_subcommand("z", "target growth z in [0,1]");
  add_value(cz, reg, "z", "target in [0,1]");
  add_value(cz, reg, "mode", "every-step or sparse");
  add_flag(cz, reg, "jitter", "randomize quotients by a factor in [1,2]");
  add_value(cz, reg, "steps", "length used when z = 1");
  auto* calpha = construct->add_subcommand("alpha", "target alpha in [-1,0]");
  add_value(calpha, reg, "alpha", "target in [-1,0]");
  add_value(calpha, reg, "mode", "every-step or sparse");
  add_flag(calpha, reg, "jitter", "randomize quotients by a factor in [1,2]");
  auto* cone = construct->add_subcommand("one", "the z = 1 family");
  add_value(cone, reg, "steps", "number of quotients");

  auto* jarnik = app.add_subcommand("jarnik", "Jarnik measure and dimension queries");
  jarnik->require_subcommand(1);
  auto add_psi = [&](CLI::App* sub) {
    add_value(sub, reg, "tau", "tau in (-1,0)");
    add_value(sub, reg, "eps", "eps in [0,|tau|)");
    add_value(sub, reg, "s", "s in [0,1)");
  };
  auto* jverdict = jarnik->add_subcommand("verdict", "H^s measure of W(psi)");
  add_psi(jverdict);
  auto* jsum = jarnik->add_subcommand("sum", "partial sum of r psi(r)^s");
  add_psi(jsum);
  add_value(jsum, reg, "terms", "number of terms");
  auto* jdim = jarnik->add_subcommand("dim", "Hausdorff dimension of F(z) or G(alpha)");
  add_value(jdim, reg, "z", "z in [0,1]");
  add_value(jdim, reg, "alpha", "alpha");

  auto* sample = app.add_subcommand("sample", "Monte Carlo over random dyadic reals");
  add_value(sample, reg, "n", "index of the statistics");
  add_value(sample, reg, "trials", "number of trials");
  add_flag(sample, reg, "gauss", "apply one Gauss-map warm-up step");
  add_value(sample, reg, "per-trial", "per-trial CSV path");

  auto* boxdim = app.add_subcommand("boxdim", "box-counting on sampled point clouds");
  add_value(boxdim, reg, "z", "target of the constructed cloud");
  add_flag(boxdim, reg, "uniform", "uniform reference cloud");
  add_value(boxdim, reg, "count", "cloud size");
  add_value(boxdim, reg, "depth", "digit budget per point");
  add_value(boxdim, reg, "k-lo", "fit window start");
  add_value(boxdim, reg, "k-hi", "fit window end");

  // CLI11 wants argv order reversed.
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::CallForVersion&) {
    throw HelpRequested{std::string(io::kToolVersion) + "\n"};
  } catch (const CLI::ParseError& e) {
    throw_domain(e.what());
  }
  // Help inside a subcommand surfaces through the subcommand's own help.
  for (auto* sub : app.get_subcommands()) {
    for (auto* leaf : sub->get_subcommands()) {
      if (leaf->get_help_ptr() && leaf->get_help_ptr()->count() > 0) {
        throw HelpRequested{leaf->help()};
      }
    }
  }

  RunConfig config;
  config.args = args;
  CLI::App* leaf = app.get_subcommands().front();
  config.command = leaf->get_name();
  if (!leaf->get_subcommands().empty()) {
    config.command += " " + leaf->get_subcommands().front()->get_name();
  }

  // Lowest precedence first: defaults, config file, environment, flags.
  if (!config_path.empty()) {
    for (const auto& [k, v] : read_config_file(config_path)) apply(config, k, v);
  }
  if (auto v = env("CFG_BITS")) apply(config, "bits", *v);
  if (auto v = env("CFG_SEED")) apply(config, "seed", *v);
  for (const auto& r : reg) {
    if (r.option->count() == 0) continue;
    apply(config, r.key, r.is_flag ? "true" : r.option->as<std::string>());
  }

  if (config.command == "eval" || config.command == "convergents" ||
      config.command == "trace") {
    if (config.cf.empty() == config.cf_file.empty()) {
      throw_domain(config.command + " needs exactly one of --cf, --cf-file");
    }
  }
  if (config.command == "sample" && config.per_trial == config.output &&
      !config.output.empty()) {
    throw_domain("--per-trial and --output must name different files");
  }
  return config;
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    // Full values go to files; truncation is a terminal convenience.
    const std::size_t truncate = config.output.empty() ? config.truncate_digits : 0;
    const std::string& cmd = config.command;
    Result r;
    if (cmd == "expand") {
      r = run_expand(config, truncate);
    } else if (cmd == "eval") {
      r = run_eval(config, truncate);
    } else if (cmd == "convergents") {
      r = run_convergents(config, truncate);
    } else if (cmd == "trace") {
      r = run_trace(config, truncate);
    } else if (cmd.starts_with("construct ")) {
      r = run_construct(config, cmd.substr(10), truncate);
    } else if (cmd.starts_with("jarnik ")) {
      r = run_jarnik(config, cmd.substr(7));
    } else if (cmd == "sample") {
      r = run_sample(config);
    } else if (cmd == "boxdim") {
      r = run_boxdim(config);
    } else {
      throw_domain("unknown subcommand '" + cmd + "'");
    }

    std::string per_trial;
    if (cmd == "sample" && !config.per_trial.empty()) {
      RunConfig csv = config;
      csv.format = Format::csv;
      per_trial = render(csv, r);
    }
    const std::string text = render(config, r);
    if (!config.per_trial.empty() && cmd == "sample") {
      write_atomically(config.per_trial, per_trial);
    }
    if (config.output.empty()) {
      out << text;
      out.flush();
    } else {
      try {
        write_atomically(config.output, text);
      } catch (...) {
        if (!config.per_trial.empty()) {
          std::error_code ec;
          std::filesystem::remove(config.per_trial, ec);
        }
        throw;
      }
    }
    return kExitOk;
  } catch (const Error& e) {
    err << io::kToolName << ": error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << io::kToolName << ": internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

int run(const std::vector<std::string>& args, const EnvLookup& env, std::ostream& out,
        std::ostream& err) {
  RunConfig config;
  try {
    config = parse(args, env);
  } catch (const HelpRequested& h) {
    out << h.text;
    return kExitOk;
  } catch (const Error& e) {
    err << io::kToolName << ": error: " << e.what() << "\n";
    return exit_code(e.kind());
  }
  return execute(config, out, err);
}

}  // namespace cfgrowth::cli
