// Copyright 2026 The bugshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "bugshare/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bugshare/audit.hpp"
#include "bugshare/distributions.hpp"
#include "bugshare/lowerbound.hpp"
#include "bugshare/mechanisms.hpp"
#include "bugshare/serialization.hpp"
#include "bugshare/simulate.hpp"

namespace bugshare::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string format;
  std::string output;
  std::string mechanism;
  std::vector<std::string> profiles;
  std::string property;
  int kmax = 200;
  std::string dist;
  std::size_t n = 0;
  std::size_t H = kDefaultSegments;
  std::string objective = "both";
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 7;
  std::string mode = "monte-carlo";
  std::size_t random = 0;
  std::size_t points = 50;
  double epsilon = 1e-9;
};

// A usage problem detected after parsing: reported like a CLI11 error.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string lowercase(std::string text) {
  std::transform(text.begin(), text.end(), text.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return text;
}

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = text.find_last_not_of(" \t");
  return text.substr(first, last - first + 1);
}

double parse_number(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(t, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed " + what + " '" + text + "'");
  }
  if (used != t.size()) throw std::invalid_argument("malformed " + what + " '" + text + "'");
  return value;
}

struct MechanismChoice {
  MechanismKind kind = MechanismKind::cs;
  double deadline = 1.0;
};

MechanismChoice parse_choice(const std::string& text) {
  const std::string lower = lowercase(trim(text));
  if (lower.rfind("csd:", 0) == 0) {
    const double t = parse_number(lower.substr(4), "deadline");
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("deadline must lie in [0, 1]");
    return {MechanismKind::csd, t};
  }
  if (lower == "csd") {
    throw std::invalid_argument("CSD needs a deadline, e.g. --mechanism csd:0.5");
  }
  return {parse_mechanism_kind(lower), 1.0};
}

std::string choice_name(const MechanismChoice& choice) {
  if (choice.kind != MechanismKind::csd) return to_string(choice.kind);
  std::ostringstream os;
  os << "CSD(" << choice.deadline << ")";
  return os.str();
}

Mechanism make_mechanism(const MechanismChoice& choice) {
  switch (choice.kind) {
    case MechanismKind::cs: return Mechanism::cs();
    case MechanismKind::csd: return Mechanism::csd(choice.deadline);
    case MechanismKind::csod: return Mechanism::csod();
    case MechanismKind::gcsod: return Mechanism::gcsod();
  }
  throw std::logic_error("unhandled mechanism");
}

std::string format_or(const Options& o, const char* fallback) {
  const std::string f = o.format.empty() ? fallback : lowercase(o.format);
  if (f != "json" && f != "csv" && f != "text") {
    throw UsageError("--format must be json, csv or text");
  }
  return f;
}

void set_precision(std::ostream& os) { os << std::setprecision(10); }

json outcome_fields(const Outcome& o) {
  json j;
  to_json(j, o);
  return j;
}

void write_outcome_text(std::ostream& os, const Outcome& o) {
  for (std::size_t i = 0; i < o.times.size(); ++i) {
    os << "agent " << i << ": time " << o.times[i] << ", payment " << o.payments[i] << '\n';
  }
  os << "sold: " << (o.sold ? "yes" : "no") << '\n';
}

void write_outcome_csv(std::ostream& os, const Outcome& o) {
  os << "agent,time,payment\n";
  for (std::size_t i = 0; i < o.times.size(); ++i) {
    os << i << ',' << o.times[i] << ',' << o.payments[i] << '\n';
  }
}

int cmd_allocate(const Options& o, std::ostream& os) {
  const MechanismChoice choice = parse_choice(o.mechanism);
  if (o.profiles.size() != 1) throw UsageError("allocate takes exactly one --profile");
  const TypeProfile profile(parse_profile(o.profiles.front()));
  const std::string format = format_or(o, "json");
  set_precision(os);

  json j{{"command", "allocate"},
         {"mechanism", choice_name(choice)},
         {"profile", profile},
         {"seed", o.seed}};
  Outcome outcome;
  std::optional<GcsodExpectation> expected;
  switch (choice.kind) {
    case MechanismKind::cs:
    case MechanismKind::csd: {
      j["deadline"] = choice.deadline;
      j["k_star"] = max_cost_sharing_size(profile.values(), choice.deadline);
      outcome = csd_allocate(profile, choice.deadline);
      break;
    }
    case MechanismKind::csod: {
      const DeadlineResult d = optimal_deadline(profile);
      j["deadline"] = d.t_star;
      j["k_star"] = d.k_star;
      outcome = csod_allocate(profile);
      break;
    }
    case MechanismKind::gcsod: {
      const Grouping g = sample_grouping(profile.size(), o.seed);
      json sides = json::array();
      for (Side s : g.sides) sides.push_back(s == Side::left ? "L" : "R");
      j["grouping"] = sides;
      outcome = gcsod_allocate(profile, g);
      if (profile.size() <= kDefaultEnumerationCap) expected = gcsod_expected(profile);
      break;
    }
  }
  j.update(outcome_fields(outcome));
  if (expected) j["expected"] = *expected;

  if (format == "json") {
    os << j.dump(2) << '\n';
  } else if (format == "csv") {
    write_outcome_csv(os, outcome);
  } else {
    os << "mechanism: " << choice_name(choice) << '\n' << "seed: " << o.seed << '\n';
    if (j.contains("deadline")) {
      os << "deadline: " << j["deadline"].get<double>() << '\n'
         << "k_star: " << j["k_star"].get<std::size_t>() << '\n';
    }
    if (j.contains("grouping")) {
      os << "grouping:";
      for (const auto& s : j["grouping"]) os << ' ' << s.get<std::string>();
      os << '\n';
    }
    write_outcome_text(os, outcome);
    if (expected) {
      os << "expected max delay: " << expected->expected_max_delay << '\n'
         << "expected sum delay: " << expected->expected_sum_delay << '\n';
    }
  }
  return kExitOk;
}

std::vector<TypeProfile> audit_profiles(const Options& o) {
  std::vector<TypeProfile> profiles;
  for (const std::string& text : o.profiles) profiles.emplace_back(parse_profile(text));
  if (o.random > 0) {
    if (o.n == 0) throw UsageError("--random needs --n");
    const std::vector<double> values =
        sample(DistributionSpec::uniform(0.0, 1.0), o.random * o.n, o.seed);
    for (std::size_t r = 0; r < o.random; ++r) {
      profiles.emplace_back(std::vector<double>(values.begin() + r * o.n,
                                                values.begin() + (r + 1) * o.n));
    }
  }
  if (profiles.empty()) throw UsageError("audit needs --profile or --random");
  return profiles;
}

ReportGridFn report_grid(const MechanismChoice& choice, std::size_t points) {
  return [choice, points](const TypeProfile& profile, std::size_t agent) {
    double upper = 1.0;
    for (double v : profile.values()) upper = std::max(upper, v);
    std::vector<double> deadlines;
    if (choice.kind == MechanismKind::csd) deadlines.push_back(choice.deadline);
    if (choice.kind == MechanismKind::csod || choice.kind == MechanismKind::gcsod) {
      deadlines.push_back(optimal_deadline(profile).t_star);
      if (profile.size() <= kDefaultEnumerationCap) {
        const std::vector<double> subsets = subset_deadlines(profile, agent);
        deadlines.insert(deadlines.end(), subsets.begin(), subsets.end());
      }
    }
    return threshold_report_grid(profile, agent, points, upper, deadlines);
  };
}

int cmd_audit(const Options& o, std::ostream& os) {
  const MechanismChoice choice = parse_choice(o.mechanism);
  const Property property = parse_property(o.property);
  const std::vector<TypeProfile> profiles = audit_profiles(o);
  const std::string format = format_or(o, "json");
  const Mechanism mechanism = make_mechanism(choice);
  if (o.points < 2) throw UsageError("--points must be at least 2");

  AuditReport report;
  switch (property) {
    case Property::sp:
      report = check_sp(mechanism, profiles, report_grid(choice, o.points), o.epsilon);
      break;
    case Property::ir: report = check_ir(mechanism, profiles); break;
    case Property::bb: report = check_bb(mechanism, profiles); break;
    case Property::mono: {
      std::vector<double> grid;
      for (std::size_t j = 0; j < o.points; ++j) {
        grid.push_back(static_cast<double>(j) / static_cast<double>(o.points - 1));
      }
      report = check_monotonicity(mechanism, profiles, grid);
      break;
    }
  }

  set_precision(os);
  if (format == "json") {
    const json j{{"command", "audit"},
                 {"mechanism", choice_name(choice)},
                 {"profiles", profiles.size()},
                 {"seed", o.seed},
                 {"report", report}};
    os << j.dump(2) << '\n';
  } else if (format == "csv") {
    os << "profile_index,agent,probe,amount\n";
    for (const Violation& v : report.violations) {
      os << v.profile_index << ',';
      if (v.agent) os << *v.agent;
      os << ',' << v.probe << ',' << v.amount << '\n';
    }
  } else {
    os << to_string(property) << " audit of " << choice_name(choice) << " over "
       << profiles.size() << " profile(s), seed " << o.seed << ": "
       << report.violations.size() << " violation(s)\n";
    for (const Violation& v : report.violations) {
      os << "  profile " << v.profile_index;
      if (v.agent) os << " agent " << *v.agent;
      os << " probe " << v.probe << " amount " << v.amount << '\n';
    }
  }
  return report.passed ? kExitOk : kExitViolations;
}

int cmd_alpha(const Options& o, std::ostream& os) {
  if (o.kmax < 1) throw UsageError("--kmax must be at least 1");
  const std::string format = format_or(o, "json");
  json rows = json::array();
  bool holds = true;
  for (int k = 1; k <= o.kmax; ++k) {
    const auto exact = alpha_exact(k);
    const double value = static_cast<double>(exact);
    holds = holds && exact < 4;
    rows.push_back({{"k", k}, {"alpha", value}, {"exact", exact.str()}});
  }
  const std::string verdict = holds ? "bound holds" : "bound violated";
  set_precision(os);
  if (format == "json") {
    const json j{{"command", "alpha"}, {"kmax", o.kmax}, {"seed", o.seed}, {"bound", 4},
                 {"alpha", rows},      {"verdict", verdict}};
    os << j.dump(2) << '\n';
  } else if (format == "csv") {
    os << "k,alpha,exact\n";
    for (const json& r : rows) {
      os << r["k"].get<int>() << ',' << r["alpha"].get<double>() << ','
         << r["exact"].get<std::string>() << '\n';
    }
  } else {
    for (const json& r : rows) {
      os << "alpha(" << r["k"].get<int>() << ") = " << r["alpha"].get<double>() << " ("
         << r["exact"].get<std::string>() << ")\n";
    }
    os << "verdict: " << verdict << '\n';
  }
  return kExitOk;
}

DistributionSpec required_dist(const Options& o) {
  if (o.dist.empty()) throw UsageError("--dist is required, e.g. --dist \"U(0,1)\"");
  return parse_distribution(o.dist);
}

int cmd_lowerbound(const Options& o, std::ostream& os) {
  const DistributionSpec spec = required_dist(o);
  if (o.n == 0) throw UsageError("--n must be at least 1");
  if (o.H == 0) throw UsageError("--H must be at least 1");
  const std::string objective = lowercase(o.objective);
  if (objective != "max" && objective != "sum" && objective != "both") {
    throw UsageError("--objective must be max, sum or both");
  }
  const std::string format = format_or(o, "json");
  std::optional<LowerBoundDetail> max_bound, sum_bound;
  if (objective != "sum") max_bound = max_delay_lower_bound_detail(spec, o.n, o.H);
  if (objective != "max") sum_bound = sum_delay_lower_bound_detail(spec, o.n, o.H);

  set_precision(os);
  if (format == "json") {
    json j{{"command", "lowerbound"}, {"distribution", spec}, {"n", o.n},
           {"H", o.H},                {"seed", o.seed}};
    if (max_bound) j["max"] = *max_bound;
    if (sum_bound) j["sum"] = *sum_bound;
    os << j.dump(2) << '\n';
  } else if (format == "csv") {
    os << "distribution,n,H,objective,value\n";
    if (max_bound) {
      os << '"' << to_string(spec) << "\"," << o.n << ',' << o.H << ",max," << max_bound->value
         << '\n';
    }
    if (sum_bound) {
      os << '"' << to_string(spec) << "\"," << o.n << ',' << o.H << ",sum," << sum_bound->value
         << '\n';
    }
  } else {
    os << "distribution " << to_string(spec) << ", n = " << o.n << ", H = " << o.H << '\n';
    if (max_bound) {
      os << "max-delay lower bound: " << max_bound->value << " (cut " << max_bound->best_cut
         << ")\n";
    }
    if (sum_bound) {
      os << "sum-delay lower bound: " << sum_bound->value << " (per agent "
         << sum_bound->per_agent << ")\n";
    }
  }
  return kExitOk;
}

int cmd_simulate(const Options& o, std::ostream& os) {
  const MechanismChoice choice = parse_choice(o.mechanism);
  SimulationConfig config;
  config.mechanism = choice.kind;
  config.deadline = choice.deadline;
  config.spec = required_dist(o);
  config.n = o.n;
  config.samples = o.samples;
  config.seed = o.seed;
  config.mode = parse_grouping_mode(o.mode);
  const std::string format = format_or(o, "json");
  const SimulationReport report = estimate(config);

  set_precision(os);
  if (format == "json") {
    const json j{{"command", "simulate"},
                 {"mechanism", choice_name(choice)},
                 {"distribution", config.spec},
                 {"n", config.n},
                 {"mode", to_string(config.mode)},
                 {"seed", config.seed},
                 {"report", report}};
    os << j.dump(2) << '\n';
  } else if (format == "csv") {
    const std::string dist = "\"" + to_string(config.spec) + "\"";
    os << "distribution,n,mechanism,objective,value,stderr\n";
    os << dist << ',' << config.n << ',' << choice_name(choice) << ",max,"
       << report.expected_max_delay << ',' << report.standard_error_max << '\n';
    os << dist << ',' << config.n << ',' << choice_name(choice) << ",sum,"
       << report.expected_sum_delay << ',' << report.standard_error_sum << '\n';
  } else {
    os << choice_name(choice) << " under " << to_string(config.spec) << ", n = " << config.n
       << ", " << report.samples_used << " samples, seed " << report.seed << '\n'
       << "expected max delay: " << report.expected_max_delay << " +- "
       << report.standard_error_max << '\n'
       << "expected sum delay: " << report.expected_sum_delay << " +- "
       << report.standard_error_sum << '\n';
  }
  return kExitOk;
}

int cmd_table(const Options& o, std::ostream& os) {
  if (o.H == 0) throw UsageError("--H must be at least 1");
  const GroupingMode mode = parse_grouping_mode(o.mode);
  const std::string format = format_or(o, "csv");
  const std::vector<TableRow> rows = reproduce_table(o.H, o.samples, o.seed, mode);
  set_precision(os);
  if (format == "json") {
    const json j{{"command", "table"}, {"H", o.H},      {"samples", o.samples},
                 {"seed", o.seed},     {"mode", to_string(mode)}, {"rows", rows}};
    os << j.dump(2) << '\n';
  } else if (format == "csv") {
    os << "# seed=" << o.seed << " samples=" << o.samples << " H=" << o.H
       << " mode=" << to_string(mode) << '\n';
    os << table_to_csv(rows);
  } else {
    os << "seed " << o.seed << ", " << o.samples << " samples, H = " << o.H << '\n';
    os << std::fixed << std::setprecision(3);
    os << std::left << std::setw(14) << "distribution" << std::right << std::setw(4) << "n"
       << "  max: GCSOD     CS     LB   sum: GCSOD     CS     LB\n";
    for (const TableRow& r : rows) {
      os << std::left << std::setw(14) << to_string(r.spec) << std::right << std::setw(4) << r.n
         << "       " << std::setw(6) << r.gcsod.expected_max_delay << ' ' << std::setw(6)
         << r.cs.expected_max_delay << ' ' << std::setw(6) << r.lower_bound_max
         << "        " << std::setw(6) << r.gcsod.expected_sum_delay << ' ' << std::setw(6)
         << r.cs.expected_sum_delay << ' ' << std::setw(6) << r.lower_bound_sum << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

std::vector<double> parse_profile(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(parse_number(item, "profile value"));
  if (values.empty() || (!text.empty() && text.back() == ',')) {
    throw std::invalid_argument("profile must be a comma-separated list of values");
  }
  return values;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Cost-sharing mechanisms for timed release of security information", "bugshare"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "Output format: json, csv or text");
    cmd->add_option("-o,--output", o.output, "Write the result to this file");
    cmd->add_option("--seed", o.seed, "Random seed");
  };
  auto add_mechanism = [&](CLI::App* cmd) {
    cmd->add_option("-m,--mechanism", o.mechanism, "cs, csd:<deadline>, csod or gcsod")
        ->required();
  };

  CLI::App* allocate = app.add_subcommand("allocate", "Run a mechanism on one profile");
  add_common(allocate);
  add_mechanism(allocate);
  allocate->add_option("-p,--profile", o.profiles, "Comma-separated reports")->required();

  CLI::App* audit = app.add_subcommand("audit", "Check SP, IR, BB or monotonicity");
  add_common(audit);
  add_mechanism(audit);
  audit->add_option("--property", o.property, "sp, ir, bb or mono")->required();
  audit->add_option("-p,--profile", o.profiles, "Comma-separated reports (repeatable)");
  audit->add_option("--random", o.random, "Also audit this many U(0,1) profiles");
  audit->add_option("--n", o.n, "Agents per random profile");
  audit->add_option("--points", o.points, "Evenly spaced report grid size");
  audit->add_option("--epsilon", o.epsilon, "SP utility-gain tolerance");

  CLI::App* alpha_cmd = app.add_subcommand("alpha", "Tabulate alpha(k) and check it stays below 4");
  add_common(alpha_cmd);
  alpha_cmd->add_option("--kmax", o.kmax, "Largest k");

  CLI::App* lowerbound = app.add_subcommand("lowerbound", "LP lower bound on expected delay");
  add_common(lowerbound);
  lowerbound->add_option("--dist", o.dist, "Prior, e.g. U(0,1) or N(0.5,0.2)")->required();
  lowerbound->add_option("--n", o.n, "Number of agents")->required();
  lowerbound->add_option("--H", o.H, "Number of segments");
  lowerbound->add_option("--objective", o.objective, "max, sum or both");

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo expected delays");
  add_common(simulate);
  add_mechanism(simulate);
  simulate->add_option("--dist", o.dist, "Prior, e.g. U(0,1) or N(0.5,0.2)")->required();
  simulate->add_option("--n", o.n, "Number of agents")->required();
  simulate->add_option("--samples", o.samples, "Number of sampled profiles");
  simulate->add_option("--mode", o.mode, "GCSOD groupings: monte-carlo or exact");

  CLI::App* table = app.add_subcommand("table", "Expected delays and lower bounds, 12 rows");
  add_common(table);
  table->add_option("--H", o.H, "Number of segments");
  table->add_option("--samples", o.samples, "Sampled profiles per row");
  table->add_option("--mode", o.mode, "GCSOD groupings: monte-carlo or exact");

  std::vector<std::string> argv_storage{"bugshare"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::ostringstream result;
  int code = kExitOk;
  try {
    if (allocate->parsed()) code = cmd_allocate(o, result);
    else if (audit->parsed()) code = cmd_audit(o, result);
    else if (alpha_cmd->parsed()) code = cmd_alpha(o, result);
    else if (lowerbound->parsed()) code = cmd_lowerbound(o, result);
    else if (simulate->parsed()) code = cmd_simulate(o, result);
    else code = cmd_table(o, result);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\nRun with --help for more information.\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (o.output.empty()) {
    out << result.str();
  } else {
    std::ofstream file(o.output);
    if (!file || !(file << result.str())) {
      err << "error: cannot write '" << o.output << "'\n";
      return kExitUsage;
    }
  }
  return code;
}

}  // namespace bugshare::cli
