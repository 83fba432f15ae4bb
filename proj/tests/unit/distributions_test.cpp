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
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <gtest/gtest.h>

namespace bugshare {
namespace {

const DistributionSpec kUniform = DistributionSpec::uniform(0.0, 1.0);
const DistributionSpec kNarrow = DistributionSpec::truncated_normal(0.5, 0.2);
const DistributionSpec kWide = DistributionSpec::truncated_normal(0.5, 0.4);

// Reference values from an independent truncated-normal implementation.
struct Reference {
  DistributionSpec spec;
  double x;
  double cdf;
};

TEST(CdfTest, Anchors) {
  EXPECT_DOUBLE_EQ(cdf(kUniform, 0.25), 0.25);
  EXPECT_NEAR(cdf(kNarrow, 0.5), 0.5, 1e-15);
  EXPECT_DOUBLE_EQ(cdf(kWide, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(cdf(kWide, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(cdf(DistributionSpec::uniform(2.0, 4.0), 3.0), 0.5);
}

TEST(CdfTest, TruncatedNormalReference) {
  const Reference refs[] = {
      {kNarrow, 0.1, 0.016748471426962612}, {kNarrow, 0.3, 0.1543626696401988},
      {kNarrow, 0.75, 0.8993093815751938},  {kWide, 0.1, 0.06720609844385254},
      {kWide, 0.3, 0.2572431198349728},     {kWide, 0.75, 0.7967089345012895},
      {DistributionSpec::truncated_normal(0.3, 0.1), 0.5, 0.9772191161828478},
  };
  for (const Reference& r : refs) EXPECT_NEAR(cdf(r.spec, r.x), r.cdf, 1e-12) << r.x;
}

TEST(CdfTest, RejectsPointsOutsideSupport) {
  EXPECT_THROW(cdf(kUniform, -0.01), std::invalid_argument);
  EXPECT_THROW(cdf(kNarrow, 1.01), std::invalid_argument);
}

TEST(CdfTest, NonDecreasing) {
  for (const DistributionSpec& s : {kUniform, kNarrow, kWide}) {
    double prev = 0.0;
    for (int j = 0; j <= 1000; ++j) {
      const double c = cdf(s, j / 1000.0);
      ASSERT_GE(c, prev);
      prev = c;
    }
  }
}

TEST(NormalTest, StandardValues) {
  EXPECT_NEAR(normal_cdf(-3.0), 0.0013498980316300933, 1e-15);
  EXPECT_NEAR(normal_quantile(0.975), 1.959963984540054, 1e-12);
  EXPECT_NEAR(normal_quantile(1e-10), -6.361340902404056, 1e-9);
  EXPECT_THROW(normal_quantile(0.0), std::domain_error);
  EXPECT_THROW(normal_quantile(1.0), std::domain_error);
}

TEST(QuantileTest, ReferenceAndRoundTrip) {
  EXPECT_NEAR(quantile(kNarrow, 0.05), 0.18141533911978242, 1e-12);
  EXPECT_NEAR(quantile(kNarrow, 0.9), 0.7507485827340363, 1e-12);
  EXPECT_NEAR(quantile(kWide, 0.05), 0.07690013960807512, 1e-12);
  EXPECT_NEAR(quantile(kWide, 0.9), 0.8593094892613276, 1e-12);
  for (const DistributionSpec& s : {kUniform, kNarrow, kWide}) {
    for (double u = 0.01; u < 1.0; u += 0.01) ASSERT_NEAR(cdf(s, quantile(s, u)), u, 1e-12);
  }
}

TEST(SampleTest, UniformMean) {
  const std::vector<double> xs = sample(kUniform, 1'000'000, 7);
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  EXPECT_NEAR(mean, 0.5, 0.002);
}

TEST(SampleTest, TruncatedNormalStaysInSupport) {
  for (double x : sample(kNarrow, 200'000, 3)) {
    ASSERT_GE(x, 0.0);
    ASSERT_LE(x, 1.0);
  }
}

TEST(SampleTest, SameSeedSameSequence) {
  EXPECT_EQ(sample(kWide, 1000, 99), sample(kWide, 1000, 99));
  EXPECT_NE(sample(kWide, 1000, 99), sample(kWide, 1000, 100));
}

double ks_distance(const DistributionSpec& s, std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double c = cdf(s, xs[i]);
    d = std::max({d, c - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - c});
  }
  return d;
}

TEST(SampleTest, KolmogorovSmirnovDistance) {
  for (const DistributionSpec& s : {kUniform, kNarrow, kWide}) {
    EXPECT_LT(ks_distance(s, sample(s, 1'000'000, 7)), 0.002) << to_string(s);
  }
}

TEST(DiscretizeTest, UniformQuarters) {
  const SegmentedDistribution seg = discretize(kUniform, 4);
  EXPECT_EQ(seg.H, 4u);
  EXPECT_DOUBLE_EQ(seg.delta, 0.25);
  for (double m : seg.masses) EXPECT_DOUBLE_EQ(m, 0.25);
}

TEST(DiscretizeTest, SymmetricHalves) {
  const SegmentedDistribution seg = discretize(kNarrow, 2);
  EXPECT_NEAR(seg.masses[0], 0.5, 1e-15);
  EXPECT_NEAR(seg.masses[1], 0.5, 1e-15);
}

TEST(DiscretizeTest, MassesSumToOne) {
  for (const DistributionSpec& s : {kUniform, kNarrow, kWide}) {
    for (std::size_t H : {1u, 7u, 100u, 1000u}) {
      const SegmentedDistribution seg = discretize(s, H);
      EXPECT_NEAR(std::accumulate(seg.masses.begin(), seg.masses.end(), 0.0), 1.0, 1e-12);
      for (double m : seg.masses) EXPECT_GE(m, 0.0);
    }
  }
}

TEST(DiscretizeTest, UniformDensityExactAtEveryResolution) {
  for (std::size_t H : {10u, 100u, 1000u}) {
    const SegmentedDistribution seg = discretize(kUniform, H);
    double worst = 0.0;
    for (double m : seg.masses) worst = std::max(worst, std::abs(m * H - 1.0));
    EXPECT_LT(worst, 1e-9) << H;
  }
}

TEST(DiscretizeTest, NormalDensityConverges) {
  double previous = 1.0;
  for (std::size_t H : {10u, 100u, 1000u}) {
    const SegmentedDistribution seg = discretize(kNarrow, H);
    const double norm = normal_cdf(2.5) - normal_cdf(-2.5);
    double worst = 0.0;
    for (std::size_t i = 0; i < H; ++i) {
      const double mid = (i + 0.5) / H;
      const double z = (mid - 0.5) / 0.2;
      const double density = std::exp(-0.5 * z * z) / (0.2 * std::sqrt(2.0 * M_PI) * norm);
      worst = std::max(worst, std::abs(seg.masses[i] * H - density));
    }
    EXPECT_LT(worst, previous);
    previous = worst;
  }
  EXPECT_LT(previous, 1e-4);
}

TEST(DiscretizeTest, RejectsZeroSegments) {
  EXPECT_THROW(discretize(kUniform, 0), std::invalid_argument);
}

TEST(ParseTest, TableNotation) {
  EXPECT_EQ(parse_distribution("U(0,1)"), kUniform);
  EXPECT_EQ(parse_distribution("N(0.5,0.2)"), kNarrow);
  EXPECT_EQ(parse_distribution(" N( 0.5 , 0.4 ) "), kWide);
  EXPECT_EQ(parse_distribution("N(0.5,0.4,0,2)"),
            DistributionSpec::truncated_normal(0.5, 0.4, 0.0, 2.0));
  for (const DistributionSpec& s : {kUniform, kNarrow, kWide}) {
    EXPECT_EQ(parse_distribution(to_string(s)), s);
  }
  EXPECT_EQ(to_string(kNarrow), "N(0.5,0.2)");
  EXPECT_EQ(to_string(kUniform), "U(0,1)");
}

TEST(ParseTest, RejectsMalformed) {
  for (const char* bad : {"", "U(1,0)", "N(0.5,-1)", "N(0.5,0)", "X(0,1)", "U(0,1", "U(0,a)",
                          "U(0,1,2)", "N(0.5)", "U(0,inf)"}) {
    EXPECT_THROW(parse_distribution(bad), std::invalid_argument) << bad;
  }
}

}  // namespace
}  // namespace bugshare
