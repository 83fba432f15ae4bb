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

#ifndef BUGSHARE_SIMULATE_HPP_
#define BUGSHARE_SIMULATE_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bugshare/distributions.hpp"
#include "bugshare/mechanisms.hpp"

namespace bugshare {

enum class MechanismKind { cs, csd, csod, gcsod };

std::string to_string(MechanismKind kind);
MechanismKind parse_mechanism_kind(const std::string& text);

enum class GroupingMode {
  // One sampled grouping per profile.
  monte_carlo,
  // Exact expectation over all 2^n groupings of each sampled profile.
  exact,
};

std::string to_string(GroupingMode mode);
GroupingMode parse_grouping_mode(const std::string& text);

// Profiles are drawn in fixed blocks, each from its own derived stream, so a
// report is bit-identical for a given seed whatever the worker count.
inline constexpr std::size_t kSimulationBlock = 8192;

struct SimulationConfig {
  MechanismKind mechanism = MechanismKind::cs;
  // Used by CSD only.
  double deadline = 1.0;
  DistributionSpec spec = DistributionSpec::uniform(0.0, 1.0);
  std::size_t n = 2;
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 7;
  GroupingMode mode = GroupingMode::monte_carlo;
  std::size_t enumeration_cap = kDefaultEnumerationCap;
  // Worker threads; 0 picks worker_count().
  std::size_t threads = 0;
};

// Throws std::invalid_argument on n == 0, samples == 0, a CSD deadline
// outside [0,1], or exact mode for anything but GCSOD within the cap.
void validate(const SimulationConfig& config);

struct SimulationReport {
  double expected_max_delay = 0.0;
  double expected_sum_delay = 0.0;
  // Sample standard deviation over sqrt(samples).
  double standard_error_max = 0.0;
  double standard_error_sum = 0.0;
  std::size_t samples_used = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const SimulationReport&, const SimulationReport&) = default;
};

// Profiles for one run share the stream layout across mechanisms, so two
// configs differing only in mechanism see identical profiles.
SimulationReport estimate(const SimulationConfig& config);

struct TableRow {
  DistributionSpec spec;
  std::size_t n = 0;
  SimulationReport gcsod;
  SimulationReport cs;
  double lower_bound_max = 0.0;
  double lower_bound_sum = 0.0;
  // Sum-delay LP minimum before scaling by n.
  double lower_bound_sum_per_agent = 0.0;
};

// The twelve (prior, n) rows: U(0,1), N(0.5,0.2), N(0.5,0.4) times
// n in {1, 2, 5, 10}.
std::vector<std::pair<DistributionSpec, std::size_t>> table_rows();

std::vector<TableRow> reproduce_table(std::size_t H, std::size_t samples,
                                      std::uint64_t seed,
                                      GroupingMode mode = GroupingMode::monte_carlo);

// Long format: distribution,n,mechanism,objective,value,stderr
std::string table_to_csv(const std::vector<TableRow>& rows);

}  // namespace bugshare

#endif  // BUGSHARE_SIMULATE_HPP_
