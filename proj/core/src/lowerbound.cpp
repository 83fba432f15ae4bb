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

#include "bugshare/lowerbound.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace bugshare {

namespace {

// Accumulates coefficients so each variable appears once per row.
class RowBuilder {
 public:
  RowBuilder& add(std::size_t var, double coef) {
    coefs_[var] += coef;
    return *this;
  }
  std::vector<LinearTerm> terms() const {
    std::vector<LinearTerm> out;
    for (const auto& [var, coef] : coefs_) {
      if (coef != 0.0) out.push_back({var, coef});
    }
    return out;
  }

 private:
  std::map<std::size_t, double> coefs_;
};

std::string indexed(const char* prefix, std::size_t i) {
  return std::string(prefix) + std::to_string(i);
}

}  // namespace

CommonConstraintModel build_common_constraints(const SegmentedDistribution& seg,
                                               std::size_t n) {
  if (n == 0) throw std::invalid_argument("number of agents must be >= 1");
  if (seg.lo != 0.0) throw std::invalid_argument("type support must start at 0");
  if (seg.H == 0 || seg.masses.size() != seg.H) {
    throw std::invalid_argument("malformed segmented distribution");
  }
  const std::size_t H = seg.H;
  const double delta = seg.delta;
  const double inv_n = 1.0 / static_cast<double>(n);

  CommonConstraintModel lp;
  LPModel& m = lp.model;
  for (std::size_t i = 0; i <= H; ++i) lp.t.push_back(m.add_variable(indexed("t_", i), 0.0, 1.0));
  for (std::size_t i = 0; i <= H; ++i) {
    lp.p.push_back(m.add_variable(indexed("p_", i), -kInfinity, kInfinity));
  }
  lp.c = m.add_variable("C", 0.0, 1.0);

  m.add_constraint("chain_0", {{lp.t[0], 1.0}}, Sense::less_equal, 1.0);
  for (std::size_t i = 1; i <= H; ++i) {
    m.add_constraint(indexed("chain_", i), {{lp.t[i], 1.0}, {lp.t[i - 1], -1.0}},
                     Sense::less_equal, 0.0);
  }

  // i*delta*(1 - t_i) - sum (1 - t_z) delta simplifies to
  // -i*delta*t_i + delta * sum t_z, so both sides are homogeneous in t.
  for (std::size_t i = 0; i <= H; ++i) {
    const double step = static_cast<double>(i) * delta;
    RowBuilder lower, upper;
    lower.add(lp.p[i], 1.0).add(lp.t[i], step);
    upper.add(lp.p[i], 1.0).add(lp.t[i], step);
    for (std::size_t z = 1; z <= i; ++z) lower.add(lp.t[z], -delta);
    for (std::size_t z = 0; z < i; ++z) upper.add(lp.t[z], -delta);
    m.add_constraint(indexed("pay_lo_", i), lower.terms(), Sense::greater_equal, 0.0);
    m.add_constraint(indexed("pay_hi_", i), upper.terms(), Sense::less_equal, 0.0);
  }

  RowBuilder budget_lo, budget_hi, allocation;
  for (std::size_t z = 1; z <= H; ++z) {
    const double mass = seg.masses[z - 1];
    budget_lo.add(lp.p[z - 1], mass);
    budget_hi.add(lp.p[z], mass);
    allocation.add(lp.t[z - 1], mass);
  }
  budget_lo.add(lp.c, inv_n);
  budget_hi.add(lp.c, inv_n);
  allocation.add(lp.c, -1.0);
  m.add_constraint("budget_lo", budget_lo.terms(), Sense::less_equal, inv_n);
  m.add_constraint("budget_hi", budget_hi.terms(), Sense::greater_equal, inv_n);
  m.add_constraint("allocation", allocation.terms(), Sense::greater_equal, 0.0);
  m.add_constraint("C_lo", {{lp.c, 1.0}}, Sense::greater_equal, 0.0);
  m.add_constraint("C_hi", {{lp.c, 1.0}}, Sense::less_equal, 1.0);
  return lp;
}

std::vector<LinearTerm> sum_delay_objective(const SegmentedDistribution& seg,
                                            const CommonConstraintModel& lp) {
  std::vector<LinearTerm> terms;
  for (std::size_t z = 1; z <= seg.H; ++z) terms.push_back({lp.t[z], seg.masses[z - 1]});
  return terms;
}

std::vector<LinearTerm> max_delay_objective(const SegmentedDistribution& seg,
                                            const CommonConstraintModel& lp,
                                            std::size_t n, std::size_t i) {
  if (i == 0 || i > seg.H) throw std::out_of_range("cut index must lie in [1, H]");
  double below = 0.0, above = 0.0;
  for (std::size_t z = 1; z <= i; ++z) below += seg.masses[z - 1];
  for (std::size_t z = i + 1; z <= seg.H; ++z) above += seg.masses[z - 1];
  if (below <= 0.0) return {};
  const double some_agent_below = 1.0 - std::pow(above, static_cast<double>(n));
  const double scale = some_agent_below / below;
  std::vector<LinearTerm> terms;
  for (std::size_t z = 1; z <= i; ++z) terms.push_back({lp.t[z], scale * seg.masses[z - 1]});
  return terms;
}

namespace {

LPSolution require_optimal(LPSolution s) {
  if (s.status != LPStatus::optimal) {
    throw std::runtime_error("lower-bound LP is " + to_string(s.status) +
                             "; the all-delayed point should always be feasible");
  }
  return s;
}

}  // namespace

LowerBoundDetail sum_delay_lower_bound_detail(const DistributionSpec& spec,
                                              std::size_t n, std::size_t H) {
  const SegmentedDistribution seg = discretize(spec, H);
  const CommonConstraintModel lp = build_common_constraints(seg, n);
  SimplexSolver solver(lp.model);
  const LPSolution s = require_optimal(solver.resolve(sum_delay_objective(seg, lp)));
  LowerBoundDetail d;
  d.per_agent = s.objective_value;
  d.value = static_cast<double>(n) * s.objective_value;
  d.lp_solves = 1;
  d.certified = s.certified();
  return d;
}

LowerBoundDetail max_delay_lower_bound_detail(const DistributionSpec& spec,
                                              std::size_t n, std::size_t H) {
  const SegmentedDistribution seg = discretize(spec, H);
  const CommonConstraintModel lp = build_common_constraints(seg, n);
  SimplexSolver solver(lp.model);
  LowerBoundDetail d;
  d.value = -kInfinity;
  for (std::size_t i = 1; i <= H; ++i) {
    const std::vector<LinearTerm> objective = max_delay_objective(seg, lp, n, i);
    if (objective.empty()) continue;
    const LPSolution s = require_optimal(solver.resolve(objective));
    ++d.lp_solves;
    d.certified = d.certified && s.certified();
    if (s.objective_value > d.value) {
      d.value = s.objective_value;
      d.best_cut = i;
    }
  }
  if (d.lp_solves == 0) d.value = 0.0;
  return d;
}

double sum_delay_lower_bound(const DistributionSpec& spec, std::size_t n, std::size_t H) {
  return sum_delay_lower_bound_detail(spec, n, H).value;
}

double max_delay_lower_bound(const DistributionSpec& spec, std::size_t n, std::size_t H) {
  return max_delay_lower_bound_detail(spec, n, H).value;
}

}  // namespace bugshare
