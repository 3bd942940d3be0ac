// Copyright 2026 The Hawk Authors. All Rights Reserved.
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

#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "hawk/distribution.hpp"
#include "hawk/errors.hpp"
#include "hawk/grid.hpp"
#include "hawk/random.hpp"
#include "test_support.hpp"

namespace hawk {
namespace {

using ::hawk::testing::random_dist;

void ExpectProbs(const TokenDistribution& d, const std::vector<double>& want,
                 double tol) {
  ASSERT_EQ(d.size(), static_cast<int>(want.size()));
  for (int i = 0; i < d.size(); ++i) EXPECT_NEAR(d[i], want[i], tol) << i;
}

void ExpectValid(const TokenDistribution& d) {
  double total = 0.0;
  for (double x : d.probs()) {
    EXPECT_GE(x, 0.0);
    total += x;
  }
  EXPECT_NEAR(total, 1.0, kSumTolerance);
}

TEST(GridTest, RowColToRaster) {
  const GridSpec g = GridSpec::make(48, 10, 4);
  EXPECT_EQ(rowcol_to_raster({0, 0}, g), 0);
  EXPECT_EQ(rowcol_to_raster({2, 4}, g), 100);
  EXPECT_EQ(rowcol_to_raster({9, 47}, g), 48 * 10 - 1);
}

TEST(GridTest, RasterToRowCol) {
  const GridSpec g = GridSpec::make(48, 10, 4);
  EXPECT_EQ(raster_to_rowcol(100, g), (Position{2, 4}));
  EXPECT_EQ(raster_to_rowcol(0, g), (Position{0, 0}));
  EXPECT_EQ(raster_to_rowcol(47, g), (Position{0, 47}));
}

TEST(GridTest, RoundTripIsIdentityOnSmallGrids) {
  for (int w = 1; w <= 5; ++w) {
    for (int h = 1; h <= 5; ++h) {
      const GridSpec g = GridSpec::make(w, h, 2);
      for (int i = 0; i < g.size(); ++i) {
        EXPECT_EQ(rowcol_to_raster(raster_to_rowcol(i, g), g), i);
      }
    }
  }
}

TEST(GridTest, OutOfRangeThrows) {
  const GridSpec g = GridSpec::make(4, 3, 2);
  EXPECT_THROW(raster_to_rowcol(12, g), BoundsError);
  EXPECT_THROW(raster_to_rowcol(-1, g), BoundsError);
  EXPECT_THROW(rowcol_to_raster({3, 0}, g), BoundsError);
  EXPECT_THROW(rowcol_to_raster({0, 4}, g), BoundsError);
}

TEST(GridTest, RejectsDegenerateSpecs) {
  EXPECT_THROW(GridSpec::make(0, 2, 2), ValidationError);
  EXPECT_THROW(GridSpec::make(2, 0, 2), ValidationError);
  EXPECT_THROW(GridSpec::make(2, 2, 0), ValidationError);
}

TEST(DistributionTest, ConstructorValidates) {
  EXPECT_THROW(TokenDistribution({0.5, 0.6}), ValidationError);
  EXPECT_THROW(TokenDistribution({1.5, -0.5}), ValidationError);
  EXPECT_THROW(TokenDistribution(std::vector<double>{}), ValidationError);
  EXPECT_NO_THROW(TokenDistribution({0.25, 0.75}));
}

TEST(NormalizeTest, Examples) {
  const double w1[] = {0.3, 0.0, 0.0};
  NormalizeResult r = normalize(w1);
  ExpectProbs(r.dist, {1, 0, 0}, 0.0);
  EXPECT_FALSE(r.degenerate);

  const double w2[] = {0.0, 0.0, 0.0};
  r = normalize(w2);
  ExpectProbs(r.dist, {1.0 / 3, 1.0 / 3, 1.0 / 3}, 1e-15);
  EXPECT_TRUE(r.degenerate);

  const double w3[] = {2.0, 2.0};
  ExpectProbs(normalize(w3).dist, {0.5, 0.5}, 0.0);
}

TEST(NormalizeTest, RejectsNegativeWeights) {
  const double w[] = {0.5, -0.1};
  EXPECT_THROW(normalize(w), ValidationError);
}

TEST(TemperatureTest, Examples) {
  const TokenDistribution d({0.5, 0.3, 0.2});
  ExpectProbs(apply_temperature(d, 1.0), {0.5, 0.3, 0.2}, 1e-15);
  // Squares renormalised: 0.25, 0.09, 0.04 over 0.38.
  ExpectProbs(apply_temperature(d, 0.5),
              {0.25 / 0.38, 0.09 / 0.38, 0.04 / 0.38}, 1e-12);
  ExpectProbs(apply_temperature(d, 0.5), {0.6579, 0.2368, 0.1053}, 1e-4);
  for (double tau : {0.1, 0.7, 3.0}) {
    ExpectProbs(apply_temperature(TokenDistribution({0.5, 0.5}), tau),
                {0.5, 0.5}, 1e-15);
  }
}

TEST(TemperatureTest, KeepsZerosAndRejectsBadTau) {
  const TokenDistribution d({0.0, 0.4, 0.6});
  EXPECT_EQ(apply_temperature(d, 2.0)[0], 0.0);
  EXPECT_THROW(apply_temperature(d, 0.0), ValidationError);
  EXPECT_THROW(apply_temperature(d, -1.0), ValidationError);
}

TEST(TemperatureTest, LowTemperatureDoesNotUnderflowToNaN) {
  const TokenDistribution d({1e-300, 1.0 - 1e-300});
  const TokenDistribution t = apply_temperature(d, 1e-3);
  ExpectValid(t);
  EXPECT_NEAR(t[1], 1.0, 1e-12);
}

TEST(TopKTest, Examples) {
  const TokenDistribution d({0.5, 0.3, 0.2});
  ExpectProbs(apply_top_k(d, 2), {0.625, 0.375, 0.0}, 1e-15);
  EXPECT_EQ(apply_top_k(d, 3), d);
  ExpectProbs(apply_top_k(TokenDistribution({0.4, 0.4, 0.2}), 1), {1, 0, 0},
              0.0);
}

TEST(TopKTest, TieBreakOracle) {
  // Oracle: keep the k largest, preferring the lower index among equals.
  RandomStream rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(6));
    std::vector<double> w(n);
    for (double& x : w) x = 1.0 + static_cast<double>(rng.below(3));
    const TokenDistribution d = normalize(w).dist;
    const int k = 1 + static_cast<int>(rng.below(n));
    std::vector<bool> used(n, false);
    for (int round = 0; round < k; ++round) {
      int best = -1;
      for (int i = 0; i < n; ++i) {
        if (!used[i] && (best < 0 || d[i] > d[best])) best = i;
      }
      used[best] = true;
    }
    const TokenDistribution t = apply_top_k(d, k);
    double kept_mass = 0.0;
    for (int i = 0; i < n; ++i) kept_mass += used[i] ? d[i] : 0.0;
    for (int i = 0; i < n; ++i) {
      EXPECT_NEAR(t[i], used[i] ? d[i] / kept_mass : 0.0, 1e-15);
    }
  }
}

TEST(TopKTest, PreservesRelativeOrderOfRetained) {
  RandomStream rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const TokenDistribution d = random_dist(rng, 8);
    const int k = 1 + static_cast<int>(rng.below(8));
    const TokenDistribution t = apply_top_k(d, k);
    ExpectValid(t);
    int nonzero = 0;
    for (int i = 0; i < 8; ++i) {
      if (t[i] > 0) ++nonzero;
      for (int j = 0; j < 8; ++j) {
        if (t[i] > 0 && t[j] > 0 && d[i] < d[j]) EXPECT_LT(t[i], t[j]);
      }
    }
    EXPECT_EQ(nonzero, k);
  }
}

TEST(TopKTest, IdentityAtVocabSize) {
  RandomStream rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const TokenDistribution d = random_dist(rng, 6);
    EXPECT_EQ(apply_top_k(d, 6), d);
    EXPECT_EQ(apply_top_k(d, 100), d);
    ExpectProbs(apply_temperature(d, 1.0), d.values(), 1e-15);
  }
  EXPECT_THROW(apply_top_k(TokenDistribution({1.0}), 0), ValidationError);
}

TEST(SamplingTest, TemperatureThenTopK) {
  const TokenDistribution d({0.5, 0.3, 0.2});
  SamplingConfig cfg;
  cfg.temperature = 0.5;
  cfg.top_k = 2;
  ExpectProbs(apply_sampling(d, cfg), {0.25 / 0.34, 0.09 / 0.34, 0.0}, 1e-12);
  EXPECT_EQ(apply_sampling(d, SamplingConfig{}), d);
}

TEST(KlTest, Examples) {
  const TokenDistribution p({0.5, 0.5});
  EXPECT_EQ(kl_divergence(p, p), 0.0);
  const double want = 0.5 * std::log(0.5 / 0.25) + 0.5 * std::log(0.5 / 0.75);
  EXPECT_NEAR(kl_divergence(p, TokenDistribution({0.25, 0.75})), want, 1e-15);
  EXPECT_NEAR(want, 0.1438, 1e-3);
  EXPECT_EQ(kl_divergence(TokenDistribution({1, 0}), TokenDistribution({0, 1})),
            std::numeric_limits<double>::infinity());
}

TEST(TotalVariationTest, Examples) {
  const TokenDistribution p({0.5, 0.5});
  EXPECT_EQ(total_variation(p, p), 0.0);
  EXPECT_DOUBLE_EQ(total_variation(p, TokenDistribution({0.25, 0.75})), 0.25);
  EXPECT_DOUBLE_EQ(
      total_variation(TokenDistribution({1, 0}), TokenDistribution({0, 1})),
      1.0);
}

TEST(TotalVariationTest, SymmetricAndTriangle) {
  RandomStream rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const TokenDistribution a = random_dist(rng, 5, 0.2);
    const TokenDistribution b = random_dist(rng, 5, 0.2);
    const TokenDistribution c = random_dist(rng, 5, 0.2);
    EXPECT_DOUBLE_EQ(total_variation(a, b), total_variation(b, a));
    EXPECT_LE(total_variation(a, c),
              total_variation(a, b) + total_variation(b, c) + 1e-15);
    EXPECT_GE(kl_divergence(a, b), 0.0);
    EXPECT_EQ(kl_divergence(a, a), 0.0);
  }
}

TEST(RandomTest, DeterministicAndTagged) {
  EXPECT_EQ(derive_seed(1, "draft"), derive_seed(1, "draft"));
  EXPECT_NE(derive_seed(1, "draft"), derive_seed(1, "verify"));
  EXPECT_NE(derive_seed(1, "draft"), derive_seed(2, "draft"));
  EXPECT_NE(derive_seed(1, "draft", 0), derive_seed(1, "draft", 1));
  RandomStream a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(RandomTest, UniformInUnitInterval) {
  RandomStream rng(5);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(RandomTest, CategoricalNeverPicksZeroMass) {
  RandomStream rng(9);
  const TokenDistribution d({0.0, 0.5, 0.0, 0.5, 0.0});
  for (int i = 0; i < 5000; ++i) {
    const int t = rng.categorical(d);
    EXPECT_TRUE(t == 1 || t == 3) << t;
  }
}

TEST(RandomTest, CategoricalFrequencies) {
  RandomStream rng(21);
  const TokenDistribution d({0.1, 0.2, 0.3, 0.4});
  std::vector<int> counts(4, 0);
  const int n = 200000;
  for (int i = 0; i < n; ++i) ++counts[rng.categorical(d)];
  for (int t = 0; t < 4; ++t) {
    // Five standard errors.
    const double se = std::sqrt(d[t] * (1 - d[t]) / n);
    EXPECT_NEAR(counts[t] / static_cast<double>(n), d[t], 5 * se);
  }
}

TEST(RandomTest, BelowCoversRange) {
  RandomStream rng(17);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t v = rng.below(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
}

}  // namespace
}  // namespace hawk
