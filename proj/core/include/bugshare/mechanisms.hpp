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

#ifndef BUGSHARE_MECHANISMS_HPP_
#define BUGSHARE_MECHANISMS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace bugshare {

// Absolute slack used by every "value is at least 1/(k*t)" comparison, so
// boundary profiles such as (0.5, 0.5) resolve identically on all platforms.
inline constexpr double kThresholdTolerance = 1e-12;

// Payments of a sold outcome must sum to the unit cost within this bound.
inline constexpr double kBudgetTolerance = 1e-9;

// Largest profile size for which the 2^n groupings of GCSOD are enumerated.
inline constexpr std::size_t kDefaultEnumerationCap = 16;

// Reported valuations v_1..v_n, in units of the bug's cost. A value is the
// utility of receiving the information at time 0.
class TypeProfile {
 public:
  // Throws std::invalid_argument on an empty list or a negative/non-finite
  // value.
  explicit TypeProfile(std::vector<double> values);
  TypeProfile(std::initializer_list<double> values)
      : TypeProfile(std::vector<double>(values)) {}

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t agent) const { return values_[agent]; }
  std::span<const double> values() const { return values_; }

  // Copy of this profile with one agent's report replaced.
  TypeProfile with_value(std::size_t agent, double value) const;

  friend bool operator==(const TypeProfile&, const TypeProfile&) = default;

 private:
  std::vector<double> values_;
};

// Allocation times in [0,1] (fractions of the bug life cycle) and payments in
// cost units, one per agent.
struct Outcome {
  std::vector<double> times;
  std::vector<double> payments;
  bool sold = false;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

enum class Side : std::uint8_t { left, right };

// The random bits of GCSOD: one side per agent.
struct Grouping {
  std::vector<Side> sides;

  std::size_t size() const { return sides.size(); }
  friend bool operator==(const Grouping&, const Grouping&) = default;
};

struct DeadlineResult {
  double t_star = 1.0;
  // 0 encodes "no group of any size covers the cost", deadline forced to 1.
  std::size_t k_star = 0;

  friend bool operator==(const DeadlineResult&, const DeadlineResult&) = default;
};

// Largest k in [1, n] such that at least k values are >= 1/(k*deadline), or
// 0 when no such k exists. A zero deadline admits no k.
std::size_t max_cost_sharing_size(std::span<const double> values,
                                  double deadline);

// Agent indices ordered by value, highest first; equal values keep the lower
// index first.
std::vector<std::size_t> rank_agents(std::span<const double> values);

Outcome cs_allocate(const TypeProfile& profile);

// Throws std::invalid_argument unless 0 <= deadline <= 1. An unsold outcome
// keeps every agent at `deadline` with zero payment, which breaks budget
// balance whenever deadline < 1.
Outcome csd_allocate(const TypeProfile& profile, double deadline);

DeadlineResult optimal_deadline(std::span<const double> values);
inline DeadlineResult optimal_deadline(const TypeProfile& profile) {
  return optimal_deadline(profile.values());
}

Outcome csod_allocate(const TypeProfile& profile);

// Each group runs cost sharing against the other group's optimal deadline.
// Ties D_L == D_R go to the left group; when both deadlines are 1 the left
// group is tried first. Throws std::invalid_argument on a size mismatch.
Outcome gcsod_allocate(const TypeProfile& profile, const Grouping& grouping);

// Grouping drawn with one fair coin per agent from a stream seeded by `seed`.
Grouping sample_grouping(std::size_t n, std::uint64_t seed);

Outcome gcsod_sample(const TypeProfile& profile, std::uint64_t seed);

// The grouping whose bit i (of `mask`) set means agent i is on the right.
Grouping grouping_from_mask(std::size_t n, std::uint64_t mask);

struct GcsodExpectation {
  std::vector<double> expected_times;
  std::vector<double> expected_payments;
  // E[max_i t_i] over groupings, not max_i E[t_i].
  double expected_max_delay = 0.0;
  double expected_sum_delay = 0.0;
  double sold_probability = 0.0;
};

// Exact expectation over all 2^n equally likely groupings. Throws
// std::invalid_argument when n exceeds `cap` (or 62).
GcsodExpectation gcsod_expected(const TypeProfile& profile,
                                std::size_t cap = kDefaultEnumerationCap);

// Agent-wise expectation of a (possibly randomized) mechanism.
struct ExpectedOutcome {
  std::vector<double> times;
  std::vector<double> payments;
  double sold_probability = 0.0;
};

struct Realization {
  double probability = 1.0;
  Outcome outcome;
};

// A mechanism as a map from reports to its distribution of outcomes.
// Deterministic mechanisms produce a single realization of probability 1.
class Mechanism {
 public:
  using RealizeFn =
      std::function<std::vector<Realization>(const TypeProfile&)>;

  Mechanism(std::string name, RealizeFn realize, bool randomized = false);

  static Mechanism cs();
  static Mechanism csd(double deadline);
  static Mechanism csod();
  static Mechanism gcsod(std::size_t cap = kDefaultEnumerationCap);

  // Wraps a deterministic outcome function.
  static Mechanism deterministic(std::string name,
                                 std::function<Outcome(const TypeProfile&)> fn);

  const std::string& name() const { return name_; }
  bool randomized() const { return randomized_; }

  std::vector<Realization> realizations(const TypeProfile& profile) const;
  ExpectedOutcome expected(const TypeProfile& profile) const;

 private:
  std::string name_;
  RealizeFn realize_;
  bool randomized_;
};

// Parses "cs", "csod", "gcsod" or "csd:<deadline>" (case-insensitive).
// Throws std::invalid_argument on anything else.
Mechanism parse_mechanism(const std::string& text);

}  // namespace bugshare

#endif  // BUGSHARE_MECHANISMS_HPP_
