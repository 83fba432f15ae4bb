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


#include "bugshare/serialization.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace bugshare {

namespace {

using nlohmann::json;

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

double read_number(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

json optional_number(const std::optional<double>& x) {
  return x ? number(*x) : json(nullptr);
}

std::optional<double> read_optional(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

}  // namespace

void to_json(json& j, const TypeProfile& profile) {
  j = std::vector<double>(profile.values().begin(), profile.values().end());
}

void to_json(json& j, const DistributionSpec& spec) {
  j = json{{"text", to_string(spec)},
           {"kind", spec.kind == DistributionKind::uniform ? "uniform" : "truncated_normal"},
           {"lo", spec.lo},
           {"hi", spec.hi}};
  if (spec.kind == DistributionKind::truncated_normal) {
    j["mu"] = spec.mu;
    j["sigma"] = spec.sigma;
  }
}
void from_json(const json& j, DistributionSpec& spec) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "uniform") {
    spec = DistributionSpec::uniform(j.at("lo").get<double>(), j.at("hi").get<double>());
  } else if (kind == "truncated_normal") {
    spec = DistributionSpec::truncated_normal(j.at("mu").get<double>(),
                                              j.at("sigma").get<double>(),
                                              j.at("lo").get<double>(), j.at("hi").get<double>());
  } else {
    throw std::invalid_argument("unknown distribution kind '" + kind + "'");
  }
}

void to_json(json& j, const Outcome& outcome) {
  j = json{{"times", outcome.times}, {"payments", outcome.payments}, {"sold", outcome.sold}};
}
void from_json(const json& j, Outcome& outcome) {
  j.at("times").get_to(outcome.times);
  j.at("payments").get_to(outcome.payments);
  j.at("sold").get_to(outcome.sold);
}

void to_json(json& j, const DeadlineResult& result) {
  j = json{{"deadline", result.t_star}, {"k_star", result.k_star}};
}
void from_json(const json& j, DeadlineResult& result) {
  j.at("deadline").get_to(result.t_star);
  j.at("k_star").get_to(result.k_star);
}

void to_json(json& j, const GcsodExpectation& e) {
  j = json{{"expected_times", e.expected_times},
           {"expected_payments", e.expected_payments},
           {"expected_max_delay", e.expected_max_delay},
           {"expected_sum_delay", e.expected_sum_delay},
           {"sold_probability", e.sold_probability}};
}
void from_json(const json& j, GcsodExpectation& e) {
  j.at("expected_times").get_to(e.expected_times);
  j.at("expected_payments").get_to(e.expected_payments);
  j.at("expected_max_delay").get_to(e.expected_max_delay);
  j.at("expected_sum_delay").get_to(e.expected_sum_delay);
  j.at("sold_probability").get_to(e.sold_probability);
}

void to_json(json& j, const Violation& v) {
  j = json{{"profile_index", v.profile_index},
           {"profile", v.profile},
           {"agent", v.agent ? json(*v.agent) : json(nullptr)},
           {"probe", number(v.probe)},
           {"amount", number(v.amount)}};
}
void from_json(const json& j, Violation& v) {
  j.at("profile_index").get_to(v.profile_index);
  j.at("profile").get_to(v.profile);
  const json& agent = j.at("agent");
  v.agent = agent.is_null() ? std::nullopt : std::optional<std::size_t>(agent.get<std::size_t>());
  v.probe = read_number(j.at("probe"));
  v.amount = read_number(j.at("amount"));
}

void to_json(json& j, const AuditReport& report) {
  j = json{{"property", to_string(report.property)},
           {"passed", report.passed},
           {"violation_count", report.violations.size()},
           {"violations", report.violations}};
}
void from_json(const json& j, AuditReport& report) {
  report.property = parse_property(j.at("property").get<std::string>());
  j.at("passed").get_to(report.passed);
  j.at("violations").get_to(report.violations);
}

void to_json(json& j, const CompetitiveReport& report) {
  j = json{{"profile", report.profile},
           {"ratio_max", optional_number(report.ratio_max)},
           {"ratio_sum", optional_number(report.ratio_sum)},
           {"assumptions_hold", report.assumptions_hold},
           {"within_bound", report.within_bound}};
}
void from_json(const json& j, CompetitiveReport& report) {
  j.at("profile").get_to(report.profile);
  report.ratio_max = read_optional(j.at("ratio_max"));
  report.ratio_sum = read_optional(j.at("ratio_sum"));
  j.at("assumptions_hold").get_to(report.assumptions_hold);
  j.at("within_bound").get_to(report.within_bound);
}

void to_json(json& j, const LowerBoundDetail& detail) {
  j = json{{"value", number(detail.value)},
           {"per_agent", number(detail.per_agent)},
           {"best_cut", detail.best_cut},
           {"lp_solves", detail.lp_solves},
           {"certified", detail.certified}};
}
void from_json(const json& j, LowerBoundDetail& detail) {
  detail.value = read_number(j.at("value"));
  detail.per_agent = read_number(j.at("per_agent"));
  j.at("best_cut").get_to(detail.best_cut);
  j.at("lp_solves").get_to(detail.lp_solves);
  j.at("certified").get_to(detail.certified);
}

void to_json(json& j, const SimulationReport& report) {
  j = json{{"expected_max_delay", number(report.expected_max_delay)},
           {"expected_sum_delay", number(report.expected_sum_delay)},
           {"standard_error_max", number(report.standard_error_max)},
           {"standard_error_sum", number(report.standard_error_sum)},
           {"samples", report.samples_used},
           {"seed", report.seed}};
}
void from_json(const json& j, SimulationReport& report) {
  report.expected_max_delay = read_number(j.at("expected_max_delay"));
  report.expected_sum_delay = read_number(j.at("expected_sum_delay"));
  report.standard_error_max = read_number(j.at("standard_error_max"));
  report.standard_error_sum = read_number(j.at("standard_error_sum"));
  j.at("samples").get_to(report.samples_used);
  j.at("seed").get_to(report.seed);
}

void to_json(json& j, const TableRow& row) {
  j = json{{"distribution", row.spec},
           {"n", row.n},
           {"gcsod", row.gcsod},
           {"cs", row.cs},
           {"lower_bound_max", number(row.lower_bound_max)},
           {"lower_bound_sum", number(row.lower_bound_sum)},
           {"lower_bound_sum_per_agent", number(row.lower_bound_sum_per_agent)}};
}
void from_json(const json& j, TableRow& row) {
  j.at("distribution").get_to(row.spec);
  j.at("n").get_to(row.n);
  j.at("gcsod").get_to(row.gcsod);
  j.at("cs").get_to(row.cs);
  row.lower_bound_max = read_number(j.at("lower_bound_max"));
  row.lower_bound_sum = read_number(j.at("lower_bound_sum"));
  row.lower_bound_sum_per_agent = read_number(j.at("lower_bound_sum_per_agent"));
}

}  // namespace bugshare
