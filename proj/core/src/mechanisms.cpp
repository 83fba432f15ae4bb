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

#include "bugshare/mechanisms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "bugshare/random.hpp"

namespace bugshare {

TypeProfile::TypeProfile(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("type profile must contain at least one agent");
  }
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("type profile values must be finite and >= 0");
    }
  }
}

TypeProfile TypeProfile::with_value(std::size_t agent, double value) const {
  std::vector<double> copy = values_;
  copy.at(agent) = value;
  return TypeProfile(std::move(copy));
}

std::vector<std::size_t> rank_agents(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  return order;
}

namespace {

// k-th highest value (1-based k) satisfies the cost sharing threshold.
bool qualifies(double kth_value, std::size_t k, double deadline) {
  const double threshold = 1.0 / (static_cast<double>(k) * deadline);
  return kth_value >= threshold - kThresholdTolerance;
}

std::size_t max_k_sorted(std::span<const double> sorted_desc, double deadline) {
  if (!(deadline > 0.0)) return 0;
  for (std::size_t k = sorted_desc.size(); k >= 1; --k) {
    if (qualifies(sorted_desc[k - 1], k, deadline)) return k;
  }
  return 0;
}

std::vector<double> sorted_desc(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  return sorted;
}

// Cost sharing among `members` (indices into `values`) against `deadline`:
// the top k* pay 1/k* at time 0 and the rest wait until `deadline` for free.
// Returns k* (0 when nobody is charged).
std::size_t run_cost_sharing(std::span<const double> values,
                             std::span<const std::size_t> members,
                             double deadline, Outcome& out) {
  std::vector<double> group(members.size());
  for (std::size_t j = 0; j < members.size(); ++j) group[j] = values[members[j]];
  const std::size_t k = max_k_sorted(sorted_desc(group), deadline);
  const std::vector<std::size_t> order = rank_agents(group);
  for (std::size_t r = 0; r < order.size(); ++r) {
    const std::size_t agent = members[order[r]];
    if (r < k) {
      out.times[agent] = 0.0;
      out.payments[agent] = 1.0 / static_cast<double>(k);
    } else {
      out.times[agent] = deadline;
      out.payments[agent] = 0.0;
    }
  }
  return k;
}

void check_deadline(double deadline) {
  if (!(deadline >= 0.0 && deadline <= 1.0)) {
    throw std::invalid_argument("deadline must lie in [0, 1]");
  }
}

}  // namespace

std::size_t max_cost_sharing_size(std::span<const double> values,
                                  double deadline) {
  return max_k_sorted(sorted_desc(values), deadline);
}

Outcome csd_allocate(const TypeProfile& profile, double deadline) {
  check_deadline(deadline);
  const std::size_t n = profile.size();
  Outcome out{std::vector<double>(n, deadline), std::vector<double>(n, 0.0), false};
  std::vector<std::size_t> everyone(n);
  std::iota(everyone.begin(), everyone.end(), std::size_t{0});
  out.sold = run_cost_sharing(profile.values(), everyone, deadline, out) > 0;
  return out;
}

Outcome cs_allocate(const TypeProfile& profile) { return csd_allocate(profile, 1.0); }

DeadlineResult optimal_deadline(std::span<const double> values) {
  const std::vector<double> sorted = sorted_desc(values);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= sorted.size(); ++k) {
    if (sorted[k - 1] > 0.0) {
      best = std::min(best, 1.0 / (static_cast<double>(k) * sorted[k - 1]));
    }
  }
  if (best <= 1.0) return {best, max_k_sorted(sorted, best)};
  return {1.0, max_k_sorted(sorted, 1.0)};
}

Outcome csod_allocate(const TypeProfile& profile) {
  return csd_allocate(profile, optimal_deadline(profile).t_star);
}

Outcome gcsod_allocate(const TypeProfile& profile, const Grouping& grouping) {
  const std::size_t n = profile.size();
  if (grouping.size() != n) {
    throw std::invalid_argument("grouping size does not match the profile");
  }
  std::vector<std::size_t> left, right;
  std::vector<double> left_values, right_values;
  for (std::size_t i = 0; i < n; ++i) {
    if (grouping.sides[i] == Side::left) {
      left.push_back(i);
      left_values.push_back(profile[i]);
    } else {
      right.push_back(i);
      right_values.push_back(profile[i]);
    }
  }
  // An empty group has no k, hence deadline 1.
  const DeadlineResult dl = optimal_deadline(left_values);
  const DeadlineResult dr = optimal_deadline(right_values);

  Outcome out{std::vector<double>(n, 1.0), std::vector<double>(n, 0.0), false};
  auto settle = [&](std::span<const std::size_t> winners,
                    std::span<const std::size_t> losers, double winner_deadline,
                    double loser_time) {
    out.sold = run_cost_sharing(profile.values(), winners, winner_deadline, out) > 0;
    for (std::size_t agent : losers) {
      out.times[agent] = loser_time;
      out.payments[agent] = 0.0;
    }
  };

  const bool tie = std::abs(dl.t_star - dr.t_star) <= kThresholdTolerance;
  if (tie) {
    if (dl.t_star < 1.0) {
      settle(left, right, dr.t_star, dl.t_star);
    } else if (dl.k_star > 0) {
      settle(left, right, 1.0, 1.0);
    } else if (dr.k_star > 0) {
      settle(right, left, 1.0, 1.0);
    }
  } else if (dl.t_star < dr.t_star) {
    settle(left, right, dr.t_star, dl.t_star);
  } else {
    settle(right, left, dl.t_star, dr.t_star);
  }
  return out;
}

Grouping sample_grouping(std::size_t n, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0));
  Grouping g;
  g.sides.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.sides.push_back(fair_coin(rng) ? Side::right : Side::left);
  }
  return g;
}

Outcome gcsod_sample(const TypeProfile& profile, std::uint64_t seed) {
  return gcsod_allocate(profile, sample_grouping(profile.size(), seed));
}

Grouping grouping_from_mask(std::size_t n, std::uint64_t mask) {
  Grouping g;
  g.sides.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.sides.push_back(((mask >> i) & 1U) != 0 ? Side::right : Side::left);
  }
  return g;
}

GcsodExpectation gcsod_expected(const TypeProfile& profile, std::size_t cap) {
  const std::size_t n = profile.size();
  if (n > cap || n > 62) {
    throw std::invalid_argument(
        "profile too large for exact grouping enumeration; use Monte Carlo");
  }
  const std::uint64_t count = std::uint64_t{1} << n;
  const double weight = 1.0 / static_cast<double>(count);
  GcsodExpectation e;
  e.expected_times.assign(n, 0.0);
  e.expected_payments.assign(n, 0.0);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    const Outcome o = gcsod_allocate(profile, grouping_from_mask(n, mask));
    double max_t = 0.0, sum_t = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      e.expected_times[i] += weight * o.times[i];
      e.expected_payments[i] += weight * o.payments[i];
      max_t = std::max(max_t, o.times[i]);
      sum_t += o.times[i];
    }
    e.expected_max_delay += weight * max_t;
    e.expected_sum_delay += weight * sum_t;
    if (o.sold) e.sold_probability += weight;
  }
  return e;
}

Mechanism::Mechanism(std::string name, RealizeFn realize, bool randomized)
    : name_(std::move(name)), realize_(std::move(realize)), randomized_(randomized) {}

Mechanism Mechanism::deterministic(std::string name,
                                   std::function<Outcome(const TypeProfile&)> fn) {
  return Mechanism(std::move(name), [fn = std::move(fn)](const TypeProfile& p) {
    return std::vector<Realization>{{1.0, fn(p)}};
  });
}

Mechanism Mechanism::cs() { return deterministic("CS", cs_allocate); }

Mechanism Mechanism::csd(double deadline) {
  check_deadline(deadline);
  std::ostringstream name;
  name << "CSD(" << deadline << ")";
  return deterministic(name.str(),
                       [deadline](const TypeProfile& p) { return csd_allocate(p, deadline); });
}

Mechanism Mechanism::csod() { return deterministic("CSOD", csod_allocate); }

Mechanism Mechanism::gcsod(std::size_t cap) {
  return Mechanism(
      "GCSOD",
      [cap](const TypeProfile& p) {
        const std::size_t n = p.size();
        if (n > cap || n > 62) {
          throw std::invalid_argument("profile too large for exact grouping enumeration");
        }
        const std::uint64_t count = std::uint64_t{1} << n;
        std::vector<Realization> all;
        all.reserve(count);
        for (std::uint64_t mask = 0; mask < count; ++mask) {
          all.push_back({1.0 / static_cast<double>(count),
                         gcsod_allocate(p, grouping_from_mask(n, mask))});
        }
        return all;
      },
      true);
}

std::vector<Realization> Mechanism::realizations(const TypeProfile& profile) const {
  return realize_(profile);
}

ExpectedOutcome Mechanism::expected(const TypeProfile& profile) const {
  const std::size_t n = profile.size();
  ExpectedOutcome e{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), 0.0};
  for (const Realization& r : realize_(profile)) {
    for (std::size_t i = 0; i < n; ++i) {
      e.times[i] += r.probability * r.outcome.times[i];
      e.payments[i] += r.probability * r.outcome.payments[i];
    }
    if (r.outcome.sold) e.sold_probability += r.probability;
  }
  return e;
}

Mechanism parse_mechanism(const std::string& text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "cs") return Mechanism::cs();
  if (lower == "csod") return Mechanism::csod();
  if (lower == "gcsod") return Mechanism::gcsod();
  if (lower.rfind("csd:", 0) == 0) {
    const std::string arg = lower.substr(4);
    std::size_t used = 0;
    double deadline = 0.0;
    try {
      deadline = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != arg.size()) {
      throw std::invalid_argument("invalid CSD deadline in '" + text + "'");
    }
    return Mechanism::csd(deadline);
  }
  throw std::invalid_argument("unknown mechanism '" + text +
                              "' (expected cs, csd:<t>, csod or gcsod)");
}

}  // namespace bugshare
