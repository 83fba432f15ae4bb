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


// Acceptance suite. Prints one PASS/FAIL line per criterion, preceded by
// indented detail lines. Exit status is non-zero if any selected criterion
// fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bugshare/audit.hpp"
#include "bugshare/distributions.hpp"
#include "bugshare/lowerbound.hpp"
#include "bugshare/lp.hpp"
#include "bugshare/mechanisms.hpp"
#include "bugshare/simulate.hpp"
#include "lp_oracle.hpp"
#include "test_support.hpp"

namespace bugshare {
namespace {

// Tolerances and workload sizes.
constexpr double kAllocationSeconds = 1e-3;
constexpr double kGainTolerance = 1e-9;
constexpr double kAlphaSeconds = 1.0;
constexpr int kAlphaKmax = 200;
constexpr std::size_t kCompetitiveProfiles = 10'000;
constexpr double kCompetitiveSeconds = 60.0;
constexpr std::size_t kAuditProfiles = 500;
constexpr std::size_t kAuditMaxAgents = 8;
constexpr double kAuditEpsilon = 1e-9;
constexpr double kCsdDeadline = 0.7;
constexpr double kAuditSeconds = 120.0;
constexpr std::size_t kTableSamples = 1'000'000;
constexpr std::uint64_t kTableSeed = 7;
constexpr double kSimulationTolerance = 0.02;
constexpr double kLowerBoundTolerance = 0.03;
constexpr double kSensitivityTolerance = 0.02;
constexpr std::size_t kValiditySamples = 200'000;
constexpr double kGridTolerance = 2e-3;
constexpr int kGridResolution = 1000;
constexpr double kGridSeconds = 60.0;
constexpr std::size_t kMonotonicityContexts = 200;
constexpr std::size_t kMonotonicityPoints = 200;

struct Verdict {
  bool passed = true;
  std::string summary;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x, int precision = 4) {
  std::ostringstream os;
  os.precision(precision);
  os << x;
  return os.str();
}

void detail(const std::string& line) { std::cout << "    " << line << '\n'; }

// Reference rows: GCSOD max, CS max, LB max, GCSOD sum, CS sum, LB sum.
struct ReferenceRow {
  const char* dist;
  std::size_t n;
  double gcsod_max, cs_max, lb_max, gcsod_sum, cs_sum, lb_sum;
};

constexpr ReferenceRow kReferenceTable[] = {
    {"U(0,1)", 1, 1.00, 1.00, 0.89, 1.00, 1.00, 0.89},
    {"U(0,1)", 2, 0.87, 0.75, 0.67, 1.75, 1.50, 0.96},
    {"U(0,1)", 5, 0.85, 0.67, 0.46, 2.67, 1.41, 0.94},
    {"U(0,1)", 10, 0.68, 0.65, 0.29, 3.01, 1.13, 0.89},
    {"N(0.5,0.2)", 1, 1.00, 1.00, 0.97, 1.00, 1.00, 0.97},
    {"N(0.5,0.2)", 2, 0.87, 0.75, 0.63, 1.75, 1.50, 0.89},
    {"N(0.5,0.2)", 5, 0.79, 0.27, 0.20, 2.13, 0.40, 0.27},
    {"N(0.5,0.2)", 10, 0.54, 0.15, 0.11, 2.20, 0.17, 0.14},
    {"N(0.5,0.4)", 1, 0.95, 0.95, 0.92, 0.95, 0.95, 0.92},
    {"N(0.5,0.4)", 2, 0.88, 0.76, 0.66, 1.73, 1.48, 0.94},
    {"N(0.5,0.4)", 5, 0.84, 0.57, 0.40, 2.54, 1.09, 0.71},
    {"N(0.5,0.4)", 10, 0.65, 0.50, 0.26, 2.76, 0.74, 0.59},
};

std::string row_label(const ReferenceRow& row) {
  return std::string(row.dist) + " n=" + std::to_string(row.n);
}

ReportGridFn threshold_grid(std::vector<double> fixed_deadlines, bool subset_aware) {
  return [fixed_deadlines, subset_aware](const TypeProfile& profile, std::size_t agent) {
    std::vector<double> deadlines = fixed_deadlines;
    if (subset_aware) {
      deadlines.push_back(optimal_deadline(profile).t_star);
      const std::vector<double> subsets = subset_deadlines(profile, agent);
      deadlines.insert(deadlines.end(), subsets.begin(), subsets.end());
    }
    return threshold_report_grid(profile, agent, 50, 2.0, deadlines);
  };
}

Verdict criterion_1() {
  const TypeProfile profile{0.9, 0.8, 0.26, 0.26};
  (void)csod_allocate(profile);
  const auto start = Clock::now();
  const DeadlineResult d = optimal_deadline(profile);
  const Outcome o = csod_allocate(profile);
  const double elapsed = seconds_since(start);
  const bool exact = d.t_star == 0.625 && d.k_star == 2 && o.sold &&
                     o.payments == std::vector<double>{0.5, 0.5, 0.0, 0.0} &&
                     o.times == std::vector<double>{0.0, 0.0, 0.625, 0.625};
  detail("deadline " + fmt(d.t_star, 17) + ", payers at " + fmt(o.payments[0]) + " and " +
         fmt(o.payments[1]) + ", free riders at " + fmt(o.times[2]) + " and " +
         fmt(o.times[3]) + ", " + fmt(elapsed * 1e6, 3) + " us");
  return {exact && elapsed < kAllocationSeconds, "CSOD on (0.9, 0.8, 0.26, 0.26)"};
}

Verdict criterion_2() {
  const TypeProfile profile{0.9, 0.8, 0.26, 0.26};
  const AuditReport report =
      check_sp(Mechanism::csod(), {profile}, threshold_grid({}, true), kAuditEpsilon);
  bool found = false;
  double gain = 0.0;
  for (const Violation& v : report.violations) {
    if (v.agent == 1 && v.probe == 0.26) {
      found = true;
      gain = v.amount;
    }
  }
  detail(std::to_string(report.violations.size()) + " SP violations; agent 2 reporting 0.26 " +
         (found ? "gains " + fmt(gain, 17) : std::string("not reported")));
  return {found && std::abs(gain - 0.25) <= kGainTolerance,
          "CSOD misreport gain 0.25"};
}

Verdict criterion_3() {
  const auto start = Clock::now();
  using boost::multiprecision::cpp_rational;
  const bool exact = alpha_exact(1) == cpp_rational(1) && alpha_exact(2) == cpp_rational(2) &&
                     alpha_exact(4) == cpp_rational(13, 4);
  const bool bounded = verify_alpha_bound(kAlphaKmax);
  const double elapsed = seconds_since(start);
  double largest = 0.0;
  for (int k = 1; k <= kAlphaKmax; ++k) largest = std::max(largest, alpha(k));
  detail("alpha(1) = " + alpha_exact(1).str() + ", alpha(2) = " + alpha_exact(2).str() +
         ", alpha(4) = " + alpha_exact(4).str() + ", max over k <= 200 = " + fmt(largest, 6) +
         ", " + fmt(elapsed, 3) + " s");
  return {exact && bounded && elapsed < kAlphaSeconds, "alpha exact and below 4 for k <= 200"};
}

Verdict criterion_4() {
  const auto start = Clock::now();
  Rng rng(derive_seed(kTableSeed, 4));
  std::size_t max_checked = 0, sum_checked = 0, max_failures = 0, sum_failures = 0;
  double worst_max = 0.0, worst_sum = 0.0;
  while (max_checked < kCompetitiveProfiles) {
    const TypeProfile profile =
        testing::random_profile(rng, testing::random_size(rng, 1, 10));
    const CompetitiveReport m = check_competitive_max(profile);
    if (m.assumptions_hold) {
      ++max_checked;
      worst_max = std::max(worst_max, *m.ratio_max);
      if (!m.within_bound) ++max_failures;
    }
    const CompetitiveReport s = check_competitive_sum(profile);
    if (s.assumptions_hold) {
      ++sum_checked;
      worst_sum = std::max(worst_sum, *s.ratio_sum);
      if (!s.within_bound) ++sum_failures;
    }
  }
  const double elapsed = seconds_since(start);
  detail("max ratio: " + std::to_string(max_checked) + " profiles, worst " + fmt(worst_max, 6) +
         ", " + std::to_string(max_failures) + " above 4");
  detail("sum ratio: " + std::to_string(sum_checked) + " profiles with k* <= n/2, worst " +
         fmt(worst_sum, 6) + ", " + std::to_string(sum_failures) + " above 8");
  detail(fmt(elapsed, 3) + " s");
  return {max_failures == 0 && sum_failures == 0 && sum_checked > 0 &&
              elapsed < kCompetitiveSeconds,
          "GCSOD ratios within 4 (max) and 8 (sum)"};
}

Verdict criterion_5() {
  const auto start = Clock::now();
  Rng rng(derive_seed(kTableSeed, 5));
  std::vector<TypeProfile> continuous, lattice;
  for (std::size_t i = 0; i < kAuditProfiles; ++i) {
    continuous.push_back(
        testing::random_profile(rng, testing::random_size(rng, 1, kAuditMaxAgents)));
    lattice.push_back(
        testing::lattice_profile(rng, testing::random_size(rng, 1, kAuditMaxAgents)));
  }
  bool passed = true;
  struct Subject {
    Mechanism mechanism;
    ReportGridFn grid;
    bool deadline_ties_decide;
  };
  const Subject subjects[] = {
      {Mechanism::cs(), threshold_grid({}, false), false},
      {Mechanism::csd(kCsdDeadline), threshold_grid({kCsdDeadline}, false), false},
      {Mechanism::gcsod(), threshold_grid({}, true), true},
  };
  for (const Subject& s : subjects) {
    std::vector<TypeProfile> profiles = continuous;
    if (!s.deadline_ties_decide) profiles.insert(profiles.end(), lattice.begin(), lattice.end());
    const AuditReport sp = check_sp(s.mechanism, profiles, s.grid, kAuditEpsilon);
    const AuditReport ir = check_ir(s.mechanism, profiles);
    std::string line = s.mechanism.name() + " over " + std::to_string(profiles.size()) +
                       " profiles: SP " + std::to_string(sp.violations.size()) + ", IR " +
                       std::to_string(ir.violations.size());
    passed = passed && sp.passed && ir.passed;
    if (s.mechanism.name().rfind("CSD", 0) == 0) {
      std::size_t mismatches = 0, empty = 0;
      for (const TypeProfile& p : profiles) {
        const bool fired = !check_bb(s.mechanism, {p}).passed;
        const bool k_empty = testing::brute_force_k(p.values(), kCsdDeadline) == 0;
        if (k_empty) ++empty;
        if (fired != k_empty) ++mismatches;
      }
      line += ", BB fires iff K empty: " + std::to_string(mismatches) + " mismatches (" +
              std::to_string(empty) + " empty)";
      passed = passed && mismatches == 0 && empty > 0;
    } else {
      const AuditReport bb = check_bb(s.mechanism, profiles);
      line += ", BB " + std::to_string(bb.violations.size());
      passed = passed && bb.passed;
    }
    detail(line);
    if (s.deadline_ties_decide) {
      // Not asserted: the left-group tie-break is manipulable at D_L == D_R.
      const AuditReport tied = check_sp(s.mechanism, lattice, s.grid, kAuditEpsilon);
      std::size_t explained = 0;
      for (const Violation& v : tied.violations) {
        if (testing::has_contested_tie(lattice[v.profile_index])) ++explained;
      }
      detail(s.mechanism.name() + " SP on " + std::to_string(lattice.size()) +
             " lattice profiles: " + std::to_string(tied.violations.size()) + " violations, " +
             std::to_string(explained) + " at a contested deadline tie (reported only)");
    }
  }
  const double elapsed = seconds_since(start);
  detail("n <= " + std::to_string(kAuditMaxAgents) + ", " + fmt(elapsed, 3) + " s");
  return {passed && elapsed < kAuditSeconds, "SP, IR and BB audits"};
}

Verdict criterion_6() {
  bool passed = true;
  std::size_t mismatches = 0;
  for (const ReferenceRow& row : kReferenceTable) {
    SimulationConfig config;
    config.spec = parse_distribution(row.dist);
    config.n = row.n;
    config.samples = kTableSamples;
    config.seed = kTableSeed;
    config.mechanism = MechanismKind::cs;
    const SimulationReport cs = estimate(config);
    config.mechanism = MechanismKind::gcsod;
    const SimulationReport gcsod = estimate(config);
    const struct {
      const char* label;
      double ours, se, expected;
    } cells[] = {
        {"GCSOD max", gcsod.expected_max_delay, gcsod.standard_error_max, row.gcsod_max},
        {"CS max", cs.expected_max_delay, cs.standard_error_max, row.cs_max},
        {"GCSOD sum", gcsod.expected_sum_delay, gcsod.standard_error_sum, row.gcsod_sum},
        {"CS sum", cs.expected_sum_delay, cs.standard_error_sum, row.cs_sum},
    };
    for (const auto& c : cells) {
      if (std::abs(c.ours - c.expected) > kSimulationTolerance) {
        ++mismatches;
        passed = false;
        detail(row_label(row) + " " + c.label + ": simulated " + fmt(c.ours, 6) + " +- " +
               fmt(c.se, 2) + ", reference " + fmt(c.expected, 3) + ", off by " +
               fmt(std::abs(c.ours - c.expected), 3));
      }
    }
    if (std::string(row.dist) == "U(0,1)" && row.n == 2) {
      const bool anchored = std::abs(cs.expected_max_delay - 0.75) <= 3 * cs.standard_error_max &&
                            std::abs(cs.expected_sum_delay - 1.50) <= 3 * cs.standard_error_sum;
      detail("anchor CS U(0,1) n=2: " + fmt(cs.expected_max_delay, 6) + " / " +
             fmt(cs.expected_sum_delay, 6) + " against 0.75 / 1.50 " +
             (anchored ? "(within 3 SE)" : "(outside 3 SE)"));
      passed = passed && anchored;
    }
  }
  detail(std::to_string(mismatches) + " of 48 simulated cells outside +-0.02");
  return {passed, "simulated delays against the reference table"};
}

Verdict criterion_7() {
  bool matches = true, valid = true, stable = true;
  double worst_shift = 0.0;
  for (const ReferenceRow& row : kReferenceTable) {
    const DistributionSpec spec = parse_distribution(row.dist);
    const LowerBoundDetail max100 = max_delay_lower_bound_detail(spec, row.n, 100);
    const LowerBoundDetail sum100 = sum_delay_lower_bound_detail(spec, row.n, 100);
    if (std::abs(max100.value - row.lb_max) > kLowerBoundTolerance) {
      matches = false;
      detail(row_label(row) + " max bound " + fmt(max100.value, 6) + ", reference " +
             fmt(row.lb_max, 3));
    }
    if (std::abs(sum100.value - row.lb_sum) > kLowerBoundTolerance) {
      matches = false;
      detail(row_label(row) + " sum bound " + fmt(sum100.value, 6) + " with the n factor, " +
             fmt(sum100.per_agent, 6) + " without, reference " + fmt(row.lb_sum, 3));
    }

    SimulationConfig config;
    config.spec = spec;
    config.n = row.n;
    config.samples = kValiditySamples;
    config.seed = kTableSeed;
    const SimulationReport cs = estimate(config);
    if (max100.value > cs.expected_max_delay + 3 * cs.standard_error_max ||
        sum100.value > cs.expected_sum_delay + 3 * cs.standard_error_sum) {
      valid = false;
      detail(row_label(row) + " bound exceeds CS: " + fmt(max100.value, 6) + " vs " +
             fmt(cs.expected_max_delay, 6) + ", " + fmt(sum100.value, 6) + " vs " +
             fmt(cs.expected_sum_delay, 6));
    }

    for (std::size_t H : {50, 200}) {
      const double max_h = max_delay_lower_bound(spec, row.n, H);
      const double sum_h = sum_delay_lower_bound(spec, row.n, H);
      const double shift =
          std::max(std::abs(max_h - max100.value), std::abs(sum_h - sum100.value));
      worst_shift = std::max(worst_shift, shift);
      if (shift > kSensitivityTolerance) {
        stable = false;
        detail(row_label(row) + " H=" + std::to_string(H) + ": max " + fmt(max_h, 6) +
               ", sum " + fmt(sum_h, 6) + " against H=100 " + fmt(max100.value, 6) + ", " +
               fmt(sum100.value, 6));
      }
    }
  }
  detail(std::string("reference match ") + (matches ? "yes" : "no") + ", bound <= CS " +
         (valid ? "yes" : "no") + ", largest H shift " + fmt(worst_shift, 4));
  return {matches && valid && stable, "LP lower bounds"};
}

Verdict criterion_8() {
  // At H = 2 the sum-delay optimum is 0 for every row, so each model is also
  // probed with one non-degenerate objective.
  const auto start = Clock::now();
  Rng rng(derive_seed(kTableSeed, 8));
  double worst = 0.0, worst_probe = 0.0;
  bool below = true;
  std::size_t index = 0;
  for (const auto& [spec, n] : table_rows()) {
    const SegmentedDistribution seg = discretize(spec, 2);
    const CommonConstraintModel lp = build_common_constraints(seg, n);
    SimplexSolver solver(lp.model);
    const LPSolution s = solver.resolve(sum_delay_objective(seg, lp));
    if (s.status != LPStatus::optimal) return {false, "H=2 LP not optimal"};
    const double grid = testing::two_segment_grid_minimum(seg, n, kGridResolution);
    worst = std::max(worst, std::abs(s.objective_value - grid));
    below = below && s.objective_value <= grid + 1e-9;

    testing::TwoSegmentObjective w{1.0, 0.0, 0.0, 0.0};
    if (index++ % 2 == 1) {
      w = {2 * uniform_open01(rng) - 1, 2 * uniform_open01(rng) - 1,
           2 * uniform_open01(rng) - 1, 2 * uniform_open01(rng) - 1};
    }
    const LPSolution probe =
        solver.resolve({{lp.t[0], w.t0}, {lp.t[1], w.t1}, {lp.t[2], w.t2}, {lp.c, w.c}});
    if (probe.status != LPStatus::optimal) return {false, "H=2 probe LP not optimal"};
    const double probe_grid = testing::two_segment_grid_minimum(seg, n, w, kGridResolution);
    worst_probe = std::max(worst_probe, std::abs(probe.objective_value - probe_grid));
    below = below && probe.objective_value <= probe_grid + 1e-9;
  }
  const double elapsed = seconds_since(start);
  detail("12 models: sum objective gap " + fmt(worst, 3) + ", probe objective gap " +
         fmt(worst_probe, 3) + ", " + fmt(elapsed, 3) + " s");
  return {std::max(worst, worst_probe) <= kGridTolerance && below && elapsed < kGridSeconds,
          "H=2 LP against grid search"};
}

Verdict criterion_9() {
  Rng rng(derive_seed(kTableSeed, 9));
  std::vector<TypeProfile> contexts;
  for (std::size_t i = 0; i < kMonotonicityContexts; ++i) {
    contexts.push_back(testing::random_profile(rng, testing::random_size(rng, 1, 8)));
  }
  std::vector<double> grid;
  for (std::size_t j = 0; j < kMonotonicityPoints; ++j) {
    grid.push_back(1.5 * static_cast<double>(j) / static_cast<double>(kMonotonicityPoints - 1));
  }
  bool passed = true;
  for (const Mechanism& m : {Mechanism::cs(), Mechanism::csd(kCsdDeadline), Mechanism::gcsod()}) {
    const AuditReport r = check_monotonicity(m, contexts, grid);
    detail(m.name() + ": " + std::to_string(r.violations.size()) + " violations");
    passed = passed && r.passed;
  }
  return {passed, "allocation time non-increasing in the report"};
}

}  // namespace
}  // namespace bugshare

int main(int argc, char** argv) {
  CLI::App app{"bugshare acceptance suite"};
  int only = 0;
  app.add_option("--only", only, "Run a single criterion (1-9)")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);

  const std::function<bugshare::Verdict()> criteria[] = {
      bugshare::criterion_1, bugshare::criterion_2, bugshare::criterion_3,
      bugshare::criterion_4, bugshare::criterion_5, bugshare::criterion_6,
      bugshare::criterion_7, bugshare::criterion_8, bugshare::criterion_9,
  };
  bool all = true;
  for (int i = 1; i <= 9; ++i) {
    if (only != 0 && i != only) continue;
    bugshare::Verdict v;
    try {
      v = criteria[i - 1]();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    std::cout << "criterion " << i << ": " << (v.passed ? "PASS" : "FAIL") << "  " << v.summary
              << std::endl;
    all = all && v.passed;
  }
  return all ? 0 : 1;
}
