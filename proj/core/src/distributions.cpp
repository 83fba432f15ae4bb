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

#include "bugshare/distributions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <boost/math/special_functions/erf.hpp>

namespace bugshare {

DistributionSpec DistributionSpec::uniform(double lo, double hi) {
  DistributionSpec s;
  s.kind = DistributionKind::uniform;
  s.lo = lo;
  s.hi = hi;
  validate(s);
  return s;
}

DistributionSpec DistributionSpec::truncated_normal(double mu, double sigma,
                                                    double lo, double hi) {
  DistributionSpec s;
  s.kind = DistributionKind::truncated_normal;
  s.mu = mu;
  s.sigma = sigma;
  s.lo = lo;
  s.hi = hi;
  validate(s);
  return s;
}

void validate(const DistributionSpec& spec) {
  if (!std::isfinite(spec.lo) || !std::isfinite(spec.hi) || !(spec.lo < spec.hi)) {
    throw std::invalid_argument("distribution support must satisfy lo < hi");
  }
  if (spec.kind == DistributionKind::truncated_normal &&
      (!std::isfinite(spec.mu) || !std::isfinite(spec.sigma) || !(spec.sigma > 0.0))) {
    throw std::invalid_argument("truncated normal needs a finite mean and sigma > 0");
  }
}

namespace {

std::vector<double> parse_arguments(const std::string& body, const std::string& text) {
  std::vector<double> args;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw std::invalid_argument("invalid number '" + item + "' in distribution '" + text + "'");
    }
    args.push_back(value);
  }
  return args;
}

// Shortest decimal form that parses back to the same double.
std::string format_number(double x) {
  std::string text;
  for (int precision = 1; precision <= 17; ++precision) {
    std::ostringstream trial;
    trial << std::setprecision(precision) << x;
    text = trial.str();
    if (std::stod(text) == x) break;
  }
  return text;
}

}  // namespace

DistributionSpec parse_distribution(const std::string& text) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  }
  const auto open = compact.find('(');
  if (compact.size() < 4 || open != 1 || compact.back() != ')') {
    throw std::invalid_argument("malformed distribution '" + text +
                                "' (expected U(lo,hi) or N(mu,sigma))");
  }
  const char family = static_cast<char>(std::toupper(static_cast<unsigned char>(compact[0])));
  const std::vector<double> args =
      parse_arguments(compact.substr(2, compact.size() - 3), text);
  if (family == 'U' && args.size() == 2) {
    return DistributionSpec::uniform(args[0], args[1]);
  }
  if (family == 'N' && args.size() == 2) {
    return DistributionSpec::truncated_normal(args[0], args[1], 0.0, 1.0);
  }
  if (family == 'N' && args.size() == 4) {
    return DistributionSpec::truncated_normal(args[0], args[1], args[2], args[3]);
  }
  throw std::invalid_argument("unsupported distribution '" + text +
                              "' (expected U(lo,hi), N(mu,sigma) or N(mu,sigma,lo,hi))");
}

std::string to_string(const DistributionSpec& spec) {
  if (spec.kind == DistributionKind::uniform) {
    return "U(" + format_number(spec.lo) + "," + format_number(spec.hi) + ")";
  }
  std::string out = "N(" + format_number(spec.mu) + "," + format_number(spec.sigma);
  if (spec.lo != 0.0 || spec.hi != 1.0) {
    out += "," + format_number(spec.lo) + "," + format_number(spec.hi);
  }
  return out + ")";
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal quantile needs p in (0, 1)");
  return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p);
}

namespace {

struct NormalWindow {
  double phi_lo;
  double mass;
};

NormalWindow window(const DistributionSpec& spec) {
  const double a = normal_cdf((spec.lo - spec.mu) / spec.sigma);
  const double b = normal_cdf((spec.hi - spec.mu) / spec.sigma);
  return {a, b - a};
}

}  // namespace

double cdf(const DistributionSpec& spec, double x) {
  if (!(x >= spec.lo && x <= spec.hi)) {
    throw std::invalid_argument("cdf argument outside the distribution support");
  }
  if (x == spec.hi) return 1.0;
  if (spec.kind == DistributionKind::uniform) return (x - spec.lo) / (spec.hi - spec.lo);
  const NormalWindow w = window(spec);
  const double value = (normal_cdf((x - spec.mu) / spec.sigma) - w.phi_lo) / w.mass;
  return std::clamp(value, 0.0, 1.0);
}

double quantile(const DistributionSpec& spec, double u) {
  if (spec.kind == DistributionKind::uniform) return spec.lo + u * (spec.hi - spec.lo);
  const NormalWindow w = window(spec);
  const double p = w.phi_lo + u * w.mass;
  return std::clamp(spec.mu + spec.sigma * normal_quantile(p), spec.lo, spec.hi);
}

double draw(const DistributionSpec& spec, Rng& rng) {
  return quantile(spec, uniform_open01(rng));
}

std::vector<double> sample(const DistributionSpec& spec, std::size_t count,
                           std::uint64_t seed) {
  validate(spec);
  Rng rng(derive_seed(seed, 0));
  std::vector<double> out(count);
  for (double& x : out) x = draw(spec, rng);
  return out;
}

SegmentedDistribution discretize(const DistributionSpec& spec, std::size_t H) {
  validate(spec);
  if (H == 0) throw std::invalid_argument("number of segments must be >= 1");
  SegmentedDistribution seg;
  seg.H = H;
  seg.lo = spec.lo;
  seg.delta = (spec.hi - spec.lo) / static_cast<double>(H);
  seg.masses.resize(H);
  double previous = 0.0;
  for (std::size_t i = 1; i <= H; ++i) {
    const double x = i == H ? spec.hi
                            : spec.lo + (spec.hi - spec.lo) * static_cast<double>(i) /
                                            static_cast<double>(H);
    const double current = cdf(spec, x);
    seg.masses[i - 1] = std::max(0.0, current - previous);
    previous = current;
  }
  return seg;
}

}  // namespace bugshare
