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

#include "bugshare/simulate.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "bugshare/audit.hpp"
#include "bugshare/lowerbound.hpp"
#include "bugshare/parallel.hpp"
#include "bugshare/random.hpp"

namespace bugshare {

namespace {

std::string lowercase(std::string text) {
  std::transform(text.begin(), text.end(), text.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return text;
}

struct Moments {
  double max_sum = 0.0;
  double max_sq = 0.0;
  double sum_sum = 0.0;
  double sum_sq = 0.0;
  std::size_t count = 0;

  void add(double max_delay, double sum_delay) {
    max_sum += max_delay;
    max_sq += max_delay * max_delay;
    sum_sum += sum_delay;
    sum_sq += sum_delay * sum_delay;
    ++count;
  }
  void merge(const Moments& o) {
    max_sum += o.max_sum;
    max_sq += o.max_sq;
    sum_sum += o.sum_sum;
    sum_sq += o.sum_sq;
    count += o.count;
  }
};

// Pairwise reduction keeps rounding error at O(log blocks).
Moments reduce(const std::vector<Moments>& parts, std::size_t begin, std::size_t end) {
  if (end - begin == 1) return parts[begin];
  const std::size_t mid = begin + (end - begin) / 2;
  Moments left = reduce(parts, begin, mid);
  left.merge(reduce(parts, mid, end));
  return left;
}

double standard_error(double total, double squares, std::size_t count) {
  if (count < 2) return 0.0;
  const double N = static_cast<double>(count);
  const double variance = std::max(0.0, (squares - total * total / N) / (N - 1.0));
  return std::sqrt(variance / N);
}

Moments simulate_block(const SimulationConfig& config, std::size_t block) {
  Rng profile_rng(derive_seed(config.seed, 2 * block));
  Rng grouping_rng(derive_seed(config.seed, 2 * block + 1));
  const std::size_t first = block * kSimulationBlock;
  const std::size_t last = std::min(config.samples, first + kSimulationBlock);
  std::vector<double> values(config.n);
  Grouping grouping;
  grouping.sides.resize(config.n);
  Moments m;
  for (std::size_t s = first; s < last; ++s) {
    for (double& v : values) v = draw(config.spec, profile_rng);
    const TypeProfile profile(values);
    switch (config.mechanism) {
      case MechanismKind::cs: {
        const Outcome o = cs_allocate(profile);
        m.add(max_delay(o), sum_delay(o));
        break;
      }
      case MechanismKind::csd: {
        const Outcome o = csd_allocate(profile, config.deadline);
        m.add(max_delay(o), sum_delay(o));
        break;
      }
      case MechanismKind::csod: {
        const Outcome o = csod_allocate(profile);
        m.add(max_delay(o), sum_delay(o));
        break;
      }
      case MechanismKind::gcsod: {
        if (config.mode == GroupingMode::exact) {
          const GcsodExpectation e = gcsod_expected(profile, config.enumeration_cap);
          m.add(e.expected_max_delay, e.expected_sum_delay);
        } else {
          for (Side& side : grouping.sides) {
            side = fair_coin(grouping_rng) ? Side::right : Side::left;
          }
          const Outcome o = gcsod_allocate(profile, grouping);
          m.add(max_delay(o), sum_delay(o));
        }
        break;
      }
    }
  }
  return m;
}

}  // namespace

std::string to_string(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::cs: return "CS";
    case MechanismKind::csd: return "CSD";
    case MechanismKind::csod: return "CSOD";
    case MechanismKind::gcsod: return "GCSOD";
  }
  return "unknown";
}

MechanismKind parse_mechanism_kind(const std::string& text) {
  const std::string lower = lowercase(text);
  if (lower == "cs") return MechanismKind::cs;
  if (lower == "csd") return MechanismKind::csd;
  if (lower == "csod") return MechanismKind::csod;
  if (lower == "gcsod") return MechanismKind::gcsod;
  throw std::invalid_argument("unknown mechanism '" + text + "'");
}

std::string to_string(GroupingMode mode) {
  return mode == GroupingMode::exact ? "exact" : "monte-carlo";
}

GroupingMode parse_grouping_mode(const std::string& text) {
  const std::string lower = lowercase(text);
  if (lower == "exact") return GroupingMode::exact;
  if (lower == "monte-carlo" || lower == "montecarlo" || lower == "mc") {
    return GroupingMode::monte_carlo;
  }
  throw std::invalid_argument("unknown grouping mode '" + text +
                              "' (expected exact or monte-carlo)");
}

void validate(const SimulationConfig& config) {
  validate(config.spec);
  if (config.n == 0) throw std::invalid_argument("number of agents must be >= 1");
  if (config.samples == 0) throw std::invalid_argument("samples must be >= 1");
  if (config.mechanism == MechanismKind::csd &&
      !(config.deadline >= 0.0 && config.deadline <= 1.0)) {
    throw std::invalid_argument("deadline must lie in [0, 1]");
  }
  if (config.mode == GroupingMode::exact &&
      (config.mechanism != MechanismKind::gcsod || config.n > config.enumeration_cap)) {
    throw std::invalid_argument(
        "exact grouping mode applies to GCSOD with n within the enumeration cap");
  }
}

SimulationReport estimate(const SimulationConfig& config) {
  validate(config);
  const std::size_t blocks = (config.samples + kSimulationBlock - 1) / kSimulationBlock;
  std::vector<Moments> parts(blocks);
  parallel_for(
      blocks, [&](std::size_t b) { parts[b] = simulate_block(config, b); }, config.threads);
  const Moments total = reduce(parts, 0, blocks);
  const double N = static_cast<double>(total.count);
  SimulationReport r;
  r.expected_max_delay = total.max_sum / N;
  r.expected_sum_delay = total.sum_sum / N;
  r.standard_error_max = standard_error(total.max_sum, total.max_sq, total.count);
  r.standard_error_sum = standard_error(total.sum_sum, total.sum_sq, total.count);
  r.samples_used = total.count;
  r.seed = config.seed;
  return r;
}

std::vector<std::pair<DistributionSpec, std::size_t>> table_rows() {
  const DistributionSpec priors[] = {
      DistributionSpec::uniform(0.0, 1.0),
      DistributionSpec::truncated_normal(0.5, 0.2),
      DistributionSpec::truncated_normal(0.5, 0.4),
  };
  std::vector<std::pair<DistributionSpec, std::size_t>> rows;
  for (const DistributionSpec& prior : priors) {
    for (std::size_t n : {1, 2, 5, 10}) rows.emplace_back(prior, n);
  }
  return rows;
}

std::vector<TableRow> reproduce_table(std::size_t H, std::size_t samples,
                                      std::uint64_t seed, GroupingMode mode) {
  std::vector<TableRow> table;
  for (const auto& [prior, n] : table_rows()) {
    TableRow row;
    row.spec = prior;
    row.n = n;
    SimulationConfig config;
    config.spec = prior;
    config.n = n;
    config.samples = samples;
    config.seed = seed;
    config.mechanism = MechanismKind::cs;
    row.cs = estimate(config);
    config.mechanism = MechanismKind::gcsod;
    config.mode = mode;
    row.gcsod = estimate(config);
    row.lower_bound_max = max_delay_lower_bound(prior, n, H);
    const LowerBoundDetail sum = sum_delay_lower_bound_detail(prior, n, H);
    row.lower_bound_sum = sum.value;
    row.lower_bound_sum_per_agent = sum.per_agent;
    table.push_back(row);
  }
  return table;
}

std::string table_to_csv(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os << std::setprecision(10);
  os << "distribution,n,mechanism,objective,value,stderr\n";
  for (const TableRow& row : rows) {
    const std::string dist = "\"" + to_string(row.spec) + "\"";
    auto line = [&](const char* mechanism, const char* objective, double value, double se) {
      os << dist << ',' << row.n << ',' << mechanism << ',' << objective << ',' << value << ','
         << se << '\n';
    };
    line("GCSOD", "max", row.gcsod.expected_max_delay, row.gcsod.standard_error_max);
    line("CS", "max", row.cs.expected_max_delay, row.cs.standard_error_max);
    line("LowerBound", "max", row.lower_bound_max, 0.0);
    line("GCSOD", "sum", row.gcsod.expected_sum_delay, row.gcsod.standard_error_sum);
    line("CS", "sum", row.cs.expected_sum_delay, row.cs.standard_error_sum);
    line("LowerBound", "sum", row.lower_bound_sum, 0.0);
  }
  return os.str();
}

}  // namespace bugshare
