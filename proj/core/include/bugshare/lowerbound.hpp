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

#ifndef BUGSHARE_LOWERBOUND_HPP_
#define BUGSHARE_LOWERBOUND_HPP_

#include <cstddef>
#include <vector>

#include "bugshare/distributions.hpp"
#include "bugshare/lp.hpp"

namespace bugshare {

inline constexpr std::size_t kDefaultSegments = 100;

// LP relaxation shared by both delay bounds. For a type i*delta the variables
// t_i and p_i are an agent's expected allocation time and payment; C is the
// probability that the bug is not sold. Rows, in order:
//   chain      1 >= t_0 >= t_1 >= ... >= t_H                  (H + 1 rows)
//   sandwich   Riemann bounds on the payment integral           (2(H + 1) rows)
//   budget     sum P(z) p_{z-1} <= (1 - C)/n <= sum P(z) p_z    (2 rows)
//   allocation sum P(z) t_{z-1} >= C                            (1 row)
//   C bounds   C >= 0, C <= 1                                   (2 rows)
// plus variable bounds t_i in [0,1], C in [0,1], p_i free.
struct CommonConstraintModel {
  LPModel model;
  std::vector<std::size_t> t;
  std::vector<std::size_t> p;
  std::size_t c = 0;
};

// Throws std::invalid_argument when n == 0 or the support does not start at 0.
CommonConstraintModel build_common_constraints(const SegmentedDistribution& seg,
                                               std::size_t n);

// sum_{z=1}^{H} P(z) t_z: an agent's expected delay.
std::vector<LinearTerm> sum_delay_objective(const SegmentedDistribution& seg,
                                            const CommonConstraintModel& lp);

// Objective for cut i in [1, H]: the mean of t_z over the first i segments
// times the probability that some agent reports at most i*delta. Empty when
// the first i segments carry no mass.
std::vector<LinearTerm> max_delay_objective(const SegmentedDistribution& seg,
                                            const CommonConstraintModel& lp,
                                            std::size_t n, std::size_t i);

struct LowerBoundDetail {
  double value = 0.0;
  // Sum-delay: the per-agent LP minimum (value == n * per_agent).
  double per_agent = 0.0;
  // Max-delay: the cut i whose LP minimum is largest.
  std::size_t best_cut = 0;
  std::size_t lp_solves = 0;
  bool certified = true;
};

LowerBoundDetail sum_delay_lower_bound_detail(const DistributionSpec& spec,
                                              std::size_t n, std::size_t H);
LowerBoundDetail max_delay_lower_bound_detail(const DistributionSpec& spec,
                                              std::size_t n, std::size_t H);

// n times the per-agent minimum of the expected delay.
double sum_delay_lower_bound(const DistributionSpec& spec, std::size_t n,
                             std::size_t H = kDefaultSegments);

// Largest of the per-cut minima; each cut alone is a valid bound.
double max_delay_lower_bound(const DistributionSpec& spec, std::size_t n,
                             std::size_t H = kDefaultSegments);

}  // namespace bugshare

#endif  // BUGSHARE_LOWERBOUND_HPP_
