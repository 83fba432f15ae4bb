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

#ifndef BUGSHARE_AUDIT_HPP_
#define BUGSHARE_AUDIT_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bugshare/mechanisms.hpp"

namespace bugshare {

enum class Property { sp, ir, bb, mono };

std::string to_string(Property property);
// Accepts "sp", "ir", "bb", "mono" (case-insensitive).
Property parse_property(const std::string& text);

struct Violation {
  std::size_t profile_index = 0;
  std::vector<double> profile;
  // Absent for profile-level findings (budget imbalance of the payment sum).
  std::optional<std::size_t> agent;
  // Misreport (SP), grid point (MONO), realization index (IR/BB).
  double probe = 0.0;
  // Utility gain (SP), utility deficit (IR), budget error (BB), or the
  // increase in allocation time (MONO).
  double amount = 0.0;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct AuditReport {
  Property property = Property::sp;
  std::vector<Violation> violations;
  bool passed = true;

  friend bool operator==(const AuditReport&, const AuditReport&) = default;
};

double max_delay(const Outcome& outcome);
double sum_delay(const Outcome& outcome);

inline double utility(double value, double time, double payment) {
  return (1.0 - time) * value - payment;
}

// Misreports tried for `agent` given the truthful profile.
using ReportGridFn =
    std::function<std::vector<double>(const TypeProfile& profile, std::size_t agent)>;

// Threshold-aware misreport grid on [0, upper]: `points` evenly spaced
// reports, every 1/(k*t) for k = 1..n and t in `deadlines` (1 is always
// included) that falls inside the range, and the other agents' reports.
std::vector<double> threshold_report_grid(const TypeProfile& profile,
                                          std::size_t agent,
                                          std::size_t points = 50,
                                          double upper = 1.0,
                                          std::vector<double> deadlines = {});

// Optimal deadlines of every non-empty subset of the agents other than
// `agent`, sorted and deduplicated. These are the deadlines a GCSOD group can
// face. Throws std::invalid_argument when n exceeds `cap`.
std::vector<double> subset_deadlines(const TypeProfile& profile, std::size_t agent,
                                     std::size_t cap = kDefaultEnumerationCap);

// Strategy-proofness on expected utilities: flags every misreport whose
// utility beats truth-telling by more than `epsilon`.
AuditReport check_sp(const Mechanism& mechanism,
                     const std::vector<TypeProfile>& profiles,
                     const ReportGridFn& report_grid, double epsilon = 1e-9);
AuditReport check_sp(const Mechanism& mechanism,
                     const std::vector<TypeProfile>& profiles,
                     const std::vector<double>& report_grid,
                     double epsilon = 1e-9);

// Individual rationality at truthful reports, checked on the expected outcome
// and on every realization.
AuditReport check_ir(const Mechanism& mechanism,
                     const std::vector<TypeProfile>& profiles);

// Ex post budget balance on every realization.
AuditReport check_bb(const Mechanism& mechanism,
                     const std::vector<TypeProfile>& profiles);

// Expected allocation time must be non-increasing (within 1e-9) as each
// agent's report sweeps the ascending `grid` with the others fixed.
AuditReport check_monotonicity(const Mechanism& mechanism,
                               const std::vector<TypeProfile>& profiles,
                               const std::vector<double>& grid);

// Payment implied by the allocation rule alone:
//   v (1 - t(v)) - integral_0^v (1 - t(z)) dz,
// the integral taken by the midpoint rule on `grid_size` cells.
double myerson_payment(const Mechanism& mechanism, std::size_t agent,
                       const TypeProfile& profile, std::size_t grid_size);

// Expected ratio of GCSOD to CSOD max delay over uniform random groupings of
// k cost sharers, as an exact rational.
boost::multiprecision::cpp_rational alpha_exact(int k);
double alpha(int k);

// True iff alpha(k) < 4 for every k in [1, k_max].
bool verify_alpha_bound(int k_max);

struct CompetitiveReport {
  std::vector<double> profile;
  // Empty when the CSOD delay is zero and the ratio is undefined.
  std::optional<double> ratio_max;
  std::optional<double> ratio_sum;
  bool assumptions_hold = false;
  // ratio <= bound whenever the assumptions hold; vacuously true otherwise.
  bool within_bound = true;

  friend bool operator==(const CompetitiveReport&, const CompetitiveReport&) = default;
};

inline constexpr double kMaxDelayCompetitiveBound = 4.0;
inline constexpr double kSumDelayCompetitiveBound = 8.0;

// E[GCSOD max delay] / CSOD max delay. Assumptions: every v_i <= 1 and some
// agent outside the CSOD cost sharing set. Throws std::invalid_argument when
// the profile exceeds the enumeration cap.
CompetitiveReport check_competitive_max(const TypeProfile& profile,
                                        std::size_t cap = kDefaultEnumerationCap);

// Sum-delay analogue; assumptions: every v_i <= 1 and k* <= n/2.
CompetitiveReport check_competitive_sum(const TypeProfile& profile,
                                        std::size_t cap = kDefaultEnumerationCap);

}  // namespace bugshare

#endif  // BUGSHARE_AUDIT_HPP_
