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

#ifndef BUGSHARE_DISTRIBUTIONS_HPP_
#define BUGSHARE_DISTRIBUTIONS_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bugshare/random.hpp"

namespace bugshare {

enum class DistributionKind { uniform, truncated_normal };

// A prior over a single agent's type, supported on [lo, hi]. For the
// truncated normal, mu and sigma describe the parent normal before it is
// conditioned on [lo, hi].
struct DistributionSpec {
  DistributionKind kind = DistributionKind::uniform;
  double lo = 0.0;
  double hi = 1.0;
  double mu = 0.0;
  double sigma = 1.0;

  static DistributionSpec uniform(double lo, double hi);
  static DistributionSpec truncated_normal(double mu, double sigma,
                                           double lo = 0.0, double hi = 1.0);

  // Upper end of the support.
  double upper() const { return hi; }

  friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;
};

// Throws std::invalid_argument unless lo < hi (finite) and sigma > 0.
void validate(const DistributionSpec& spec);

// Accepts "U(lo,hi)", "N(mu,sigma)" (truncated to [0,1]) and
// "N(mu,sigma,lo,hi)"; whitespace is ignored.
DistributionSpec parse_distribution(const std::string& text);

// Inverse of parse_distribution; "N(0.5,0.2)" style when truncated to [0,1].
std::string to_string(const DistributionSpec& spec);

// Standard normal CDF and quantile.
double normal_cdf(double z);
double normal_quantile(double p);

// Throws std::invalid_argument for x outside [lo, hi].
double cdf(const DistributionSpec& spec, double x);

// Inverse CDF for u in (0, 1).
double quantile(const DistributionSpec& spec, double u);

double draw(const DistributionSpec& spec, Rng& rng);

// `count` i.i.d. draws by inverse CDF, reproducible per (spec, count, seed).
std::vector<double> sample(const DistributionSpec& spec, std::size_t count,
                           std::uint64_t seed);

// The support cut into H equal segments of width delta; masses[i-1] is the
// probability of segment [(i-1) delta, i delta].
struct SegmentedDistribution {
  std::size_t H = 0;
  double lo = 0.0;
  double delta = 0.0;
  std::vector<double> masses;
};

SegmentedDistribution discretize(const DistributionSpec& spec, std::size_t H);

}  // namespace bugshare

#endif  // BUGSHARE_DISTRIBUTIONS_HPP_
