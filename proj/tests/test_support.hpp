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


// Shared helpers for the unit and acceptance tests.

#ifndef BUGSHARE_TESTS_TEST_SUPPORT_HPP_
#define BUGSHARE_TESTS_TEST_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bugshare/mechanisms.hpp"
#include "bugshare/random.hpp"

namespace bugshare::testing {

// Values in (0, 1].
inline TypeProfile random_profile(Rng& rng, std::size_t n) {
  std::vector<double> values(n);
  for (double& v : values) v = 1.0 - uniform_open01(rng);
  return TypeProfile(values);
}

// Values drawn from a small lattice so that ties and exact thresholds such as
// 1/2, 1/3 and 1/4 occur often.
inline TypeProfile lattice_profile(Rng& rng, std::size_t n) {
  static constexpr double kLattice[] = {0.0,  0.1,  0.2, 0.25, 1.0 / 3.0, 0.4,
                                        0.5,  0.6,  0.7, 0.75, 0.8,       0.9, 1.0};
  std::vector<double> values(n);
  for (double& v : values) v = kLattice[rng() % std::size(kLattice)];
  return TypeProfile(values);
}

inline std::size_t random_size(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

// Largest k with at least k values >= 1/(k t), by direct counting.
inline std::size_t brute_force_k(std::span<const double> values, double t) {
  if (!(t > 0.0)) return 0;
  std::size_t best = 0;
  for (std::size_t k = 1; k <= values.size(); ++k) {
    const double threshold = 1.0 / (static_cast<double>(k) * t);
    const auto count = static_cast<std::size_t>(
        std::count_if(values.begin(), values.end(),
                      [&](double v) { return v >= threshold - 1e-12; }));
    if (count >= k) best = k;
  }
  return best;
}

// True when some grouping has D_L == D_R and the right group could also cover
// the cost at that deadline, so the left-group tie-break decides the winner.
inline bool has_contested_tie(const TypeProfile& profile) {
  const std::size_t n = profile.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<double> left, right;
    for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1 ? right : left).push_back(profile[i]);
    if (right.empty()) continue;
    const double d_left = left.empty() ? 1.0 : optimal_deadline(left).t_star;
    const double d_right = optimal_deadline(right).t_star;
    if (std::abs(d_left - d_right) <= 1e-12 && brute_force_k(right, d_right) > 0) return true;
  }
  return false;
}

}  // namespace bugshare::testing

#endif  // BUGSHARE_TESTS_TEST_SUPPORT_HPP_
