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

#include "bugshare/audit.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "bugshare/parallel.hpp"

namespace bugshare {

namespace {

constexpr double kIrTolerance = 1e-9;
constexpr double kMonotoneTolerance = 1e-9;

std::vector<double> to_vector(const TypeProfile& profile) {
  return {profile.values().begin(), profile.values().end()};
}

// Runs `audit_one` per profile in parallel and concatenates the findings in
// profile order.
AuditReport collect(Property property, std::size_t count,
                    const std::function<std::vector<Violation>(std::size_t)>& audit_one) {
  std::vector<std::vector<Violation>> found(count);
  parallel_for(count, [&](std::size_t i) { found[i] = audit_one(i); });
  AuditReport report;
  report.property = property;
  for (auto& part : found) {
    report.violations.insert(report.violations.end(),
                             std::make_move_iterator(part.begin()),
                             std::make_move_iterator(part.end()));
  }
  report.passed = report.violations.empty();
  return report;
}

}  // namespace

std::string to_string(Property property) {
  switch (property) {
    case Property::sp: return "sp";
    case Property::ir: return "ir";
    case Property::bb: return "bb";
    case Property::mono: return "mono";
  }
  return "unknown";
}

Property parse_property(const std::string& text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "sp") return Property::sp;
  if (lower == "ir") return Property::ir;
  if (lower == "bb") return Property::bb;
  if (lower == "mono") return Property::mono;
  throw std::invalid_argument("unknown property '" + text + "' (expected sp, ir, bb or mono)");
}

double max_delay(const Outcome& outcome) {
  return outcome.times.empty()
             ? 0.0
             : *std::max_element(outcome.times.begin(), outcome.times.end());
}

double sum_delay(const Outcome& outcome) {
  return std::accumulate(outcome.times.begin(), outcome.times.end(), 0.0);
}

std::vector<double> threshold_report_grid(const TypeProfile& profile,
                                          std::size_t agent, std::size_t points,
                                          double upper,
                                          std::vector<double> deadlines) {
  std::vector<double> grid;
  if (points == 1) {
    grid.push_back(upper);
  } else {
    for (std::size_t j = 0; j < points; ++j) {
      grid.push_back(upper * static_cast<double>(j) / static_cast<double>(points - 1));
    }
  }
  deadlines.push_back(1.0);
  const std::size_t n = profile.size();
  for (double t : deadlines) {
    if (!(t > 0.0)) continue;
    for (std::size_t k = 1; k <= n; ++k) {
      const double threshold = 1.0 / (static_cast<double>(k) * t);
      if (threshold <= upper) grid.push_back(threshold);
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (j != agent && profile[j] <= upper) grid.push_back(profile[j]);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::vector<double> subset_deadlines(const TypeProfile& profile, std::size_t agent,
                                     std::size_t cap) {
  const std::size_t n = profile.size();
  if (agent >= n) throw std::out_of_range("agent index out of range");
  if (n > cap || n > 62) {
    throw std::invalid_argument("profile size exceeds the enumeration cap");
  }
  std::vector<double> others;
  for (std::size_t j = 0; j < n; ++j) {
    if (j != agent) others.push_back(profile[j]);
  }
  std::vector<double> deadlines;
  std::vector<double> subset;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << others.size()); ++mask) {
    subset.clear();
    for (std::size_t j = 0; j < others.size(); ++j) {
      if ((mask >> j) & 1U) subset.push_back(others[j]);
    }
    deadlines.push_back(optimal_deadline(subset).t_star);
  }
  std::sort(deadlines.begin(), deadlines.end());
  deadlines.erase(std::unique(deadlines.begin(), deadlines.end()), deadlines.end());
  return deadlines;
}

AuditReport check_sp(const Mechanism& mechanism,
                     const std::vector<TypeProfile>& profiles,
                     const ReportGridFn& report_grid, double epsilon) {
  if (epsilon < 0.0) throw std::invalid_argument("epsilon must be >= 0");
  return collect(Property::sp, profiles.size(), [&](std::size_t idx) {
    const TypeProfile& truth = profiles[idx];
    const ExpectedOutcome honest = mechanism.expected(truth);
    std::vector<Violation> found;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      const double v = truth[i];
      const double u_truth = utility(v, honest.times[i], honest.payments[i]);
      for (double report : report_grid(truth, i)) {
        if (report == v) continue;
        const ExpectedOutcome lie = mechanism.expected(truth.with_value(i, report));
        const double gain = utility(v, lie.times[i], lie.payments[i]) - u_truth;
        if (gain > epsilon) found.push_back({idx, to_vector(truth), i, report, gain});
      }
    }
    return found;
  });
}

AuditReport check_sp(const Mechanism& mechanism,
                     const std::vector<TypeProfile>& profiles,
                     const std::vector<double>& report_grid, double epsilon) {
  return check_sp(
      mechanism, profiles,
      [&report_grid](const TypeProfile&, std::size_t) { return report_grid; }, epsilon);
}

AuditReport check_ir(const Mechanism& mechanism,
                     const std::vector<TypeProfile>& profiles) {
  return collect(Property::ir, profiles.size(), [&](std::size_t idx) {
    const TypeProfile& truth = profiles[idx];
    std::vector<Violation> found;
    const std::vector<Realization> all = mechanism.realizations(truth);
    for (std::size_t r = 0; r < all.size(); ++r) {
      const Outcome& o = all[r].outcome;
      for (std::size_t i = 0; i < truth.size(); ++i) {
        const double u = utility(truth[i], o.times[i], o.payments[i]);
        if (u < -kIrTolerance) {
          found.push_back({idx, to_vector(truth), i, static_cast<double>(r), -u});
        }
      }
    }
    if (mechanism.randomized()) {
      const ExpectedOutcome e = mechanism.expected(truth);
      for (std::size_t i = 0; i < truth.size(); ++i) {
        const double u = utility(truth[i], e.times[i], e.payments[i]);
        if (u < -kIrTolerance) found.push_back({idx, to_vector(truth), i, -1.0, -u});
      }
    }
    return found;
  });
}

AuditReport check_bb(const Mechanism& mechanism,
                     const std::vector<TypeProfile>& profiles) {
  return collect(Property::bb, profiles.size(), [&](std::size_t idx) {
    const TypeProfile& truth = profiles[idx];
    std::vector<Violation> found;
    const std::vector<Realization> all = mechanism.realizations(truth);
    for (std::size_t r = 0; r < all.size(); ++r) {
      const Outcome& o = all[r].outcome;
      const double probe = static_cast<double>(r);
      if (o.sold) {
        const double total = std::accumulate(o.payments.begin(), o.payments.end(), 0.0);
        if (std::abs(total - 1.0) > kBudgetTolerance) {
          found.push_back({idx, to_vector(truth), std::nullopt, probe, std::abs(total - 1.0)});
        }
        continue;
      }
      for (std::size_t i = 0; i < truth.size(); ++i) {
        const double error = std::max(std::abs(o.payments[i]), 1.0 - o.times[i]);
        if (error > kBudgetTolerance) found.push_back({idx, to_vector(truth), i, probe, error});
      }
    }
    return found;
  });
}

AuditReport check_monotonicity(const Mechanism& mechanism,
                               const std::vector<TypeProfile>& profiles,
                               const std::vector<double>& grid) {
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw std::invalid_argument("monotonicity grid must be sorted ascending");
  }
  return collect(Property::mono, profiles.size(), [&](std::size_t idx) {
    const TypeProfile& base = profiles[idx];
    std::vector<Violation> found;
    for (std::size_t i = 0; i < base.size(); ++i) {
      double previous = 0.0;
      for (std::size_t j = 0; j < grid.size(); ++j) {
        const double t = mechanism.expected(base.with_value(i, grid[j])).times[i];
        if (j > 0 && t > previous + kMonotoneTolerance) {
          found.push_back({idx, to_vector(base), i, grid[j], t - previous});
        }
        previous = t;
      }
    }
    return found;
  });
}

double myerson_payment(const Mechanism& mechanism, std::size_t agent,
                       const TypeProfile& profile, std::size_t grid_size) {
  if (grid_size == 0) throw std::invalid_argument("grid_size must be positive");
  if (agent >= profile.size()) throw std::out_of_range("agent index out of range");
  const double v = profile[agent];
  if (v == 0.0) return 0.0;
  auto time_at = [&](double z) {
    return mechanism.expected(profile.with_value(agent, z)).times[agent];
  };
  const double h = v / static_cast<double>(grid_size);
  double integral = 0.0;
  for (std::size_t j = 0; j < grid_size; ++j) {
    integral += (1.0 - time_at((static_cast<double>(j) + 0.5) * h)) * h;
  }
  return v * (1.0 - time_at(v)) - integral;
}

boost::multiprecision::cpp_rational alpha_exact(int k) {
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::cpp_rational;
  if (k <= 0) throw std::invalid_argument("alpha(k) requires k >= 1");
  // Group terms by their divisor max{1, min{j, k-j}} so only one rational
  // division per distinct divisor is needed.
  std::vector<cpp_int> by_divisor(static_cast<std::size_t>(k / 2) + 2, 0);
  cpp_int binom = 1;
  for (int j = 0; j <= k; ++j) {
    const int divisor = std::max(1, std::min(j, k - j));
    by_divisor[static_cast<std::size_t>(divisor)] += binom;
    binom = binom * (k - j) / (j + 1);
  }
  cpp_rational sum = 0;
  for (std::size_t d = 1; d < by_divisor.size(); ++d) {
    if (by_divisor[d] != 0) sum += cpp_rational(by_divisor[d] * k, cpp_int(d));
  }
  return sum / cpp_rational(cpp_int(1) << k);
}

double alpha(int k) { return static_cast<double>(alpha_exact(k)); }

bool verify_alpha_bound(int k_max) {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  for (int k = 1; k <= k_max; ++k) {
    if (alpha_exact(k) >= 4) return false;
  }
  return true;
}

namespace {

struct CsodBaseline {
  Outcome outcome;
  std::size_t payers = 0;
  bool values_at_most_one = true;
};

CsodBaseline csod_baseline(const TypeProfile& profile) {
  CsodBaseline b{csod_allocate(profile)};
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (b.outcome.payments[i] > 0.0) ++b.payers;
    if (profile[i] > 1.0) b.values_at_most_one = false;
  }
  return b;
}

CompetitiveReport competitive(const TypeProfile& profile, std::size_t cap) {
  if (profile.size() > cap) {
    throw std::invalid_argument("profile exceeds the grouping enumeration cap");
  }
  const CsodBaseline base = csod_baseline(profile);
  const GcsodExpectation g = gcsod_expected(profile, cap);
  CompetitiveReport r;
  r.profile = to_vector(profile);
  const double d_max = max_delay(base.outcome);
  const double d_sum = sum_delay(base.outcome);
  if (d_max > 0.0) r.ratio_max = g.expected_max_delay / d_max;
  if (d_sum > 0.0) r.ratio_sum = g.expected_sum_delay / d_sum;
  return r;
}

}  // namespace

CompetitiveReport check_competitive_max(const TypeProfile& profile, std::size_t cap) {
  CompetitiveReport r = competitive(profile, cap);
  const CsodBaseline base = csod_baseline(profile);
  r.assumptions_hold =
      base.values_at_most_one && base.payers < profile.size() && r.ratio_max.has_value();
  r.within_bound = !r.assumptions_hold || *r.ratio_max <= kMaxDelayCompetitiveBound;
  return r;
}

CompetitiveReport check_competitive_sum(const TypeProfile& profile, std::size_t cap) {
  CompetitiveReport r = competitive(profile, cap);
  const CsodBaseline base = csod_baseline(profile);
  r.assumptions_hold = base.values_at_most_one && 2 * base.payers <= profile.size() &&
                       r.ratio_sum.has_value();
  r.within_bound = !r.assumptions_hold || *r.ratio_sum <= kSumDelayCompetitiveBound;
  return r;
}

}  // namespace bugshare
