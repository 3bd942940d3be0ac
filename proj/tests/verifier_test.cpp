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

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include <gtest/gtest.h>

#include "hawk/errors.hpp"
#include "hawk/verifier.hpp"
#include "test_support.hpp"
#include "verify_oracle.hpp"

namespace hawk {
namespace {

using ::hawk::testing::longhand_alpha;
using ::hawk::testing::longhand_residual;
using ::hawk::testing::max_abs_diff;
using ::hawk::testing::random_dist;

using DistPtr = std::shared_ptr<const TokenDistribution>;

DistPtr Share(const TokenDistribution& d) {
  return std::make_shared<const TokenDistribution>(d);
}

using ::hawk::testing::kForceAccept;
using ::hawk::testing::kForceReject;
using ::hawk::testing::ScriptedSource;

const TokenDistribution kP({0.5, 0.3, 0.2});
const TokenDistribution kQ({0.2, 0.5, 0.3});

TEST(AcceptanceRatioTest, Examples) {
  for (int t = 0; t < 3; ++t) EXPECT_EQ(acceptance_ratio(kP, kP, t), 1.0);
  EXPECT_EQ(acceptance_ratio(kP, kQ, 0), 1.0);
  EXPECT_DOUBLE_EQ(acceptance_ratio(kP, kQ, 1), 0.6);
  EXPECT_THROW(acceptance_ratio(kP, TokenDistribution({1, 0, 0}), 1),
               ValidationError);
}

TEST(ResidualTest, Examples) {
  NormalizeResult r = residual_update(kP, kQ);
  EXPECT_EQ(r.dist.values(), (std::vector<double>{1, 0, 0}));
  EXPECT_FALSE(r.degenerate);

  r = residual_update(kP, kP);
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.dist, TokenDistribution::uniform(3));

  const TokenDistribution p({0.4, 0.6, 0.0});
  r = residual_update(p, TokenDistribution({0, 0, 1}));
  EXPECT_FALSE(r.degenerate);
  EXPECT_LT(max_abs_diff(r.dist.values(), p.values()), 1e-15);
}

TEST(ResidualTest, MatchesLonghand) {
  RandomStream rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    const TokenDistribution p = random_dist(rng, 5, 0.2);
    const TokenDistribution q = random_dist(rng, 5, 0.2);
    const double a = acceptance_mass(p, q);
    EXPECT_NEAR(a, longhand_alpha(p.values(), q.values()), 1e-15);
    EXPECT_GE(a, 0.0);
    EXPECT_LE(a, 1.0);
    if (a < 1.0 - 1e-12) {
      EXPECT_LT(max_abs_diff(residual_update(p, q).dist.values(),
                             longhand_residual(p.values(), q.values())),
                1e-12);
    }
  }
}

TEST(AlphaTest, OneExactlyWhenDistributionsMatch) {
  RandomStream rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const TokenDistribution p = random_dist(rng, 4);
    const TokenDistribution q = random_dist(rng, 4);
    EXPECT_NEAR(acceptance_mass(p, p), 1.0, 1e-12);
    EXPECT_LT(acceptance_mass(p, q), 1.0);
  }
}

TEST(SequentialVerifyTest, MatchingDraftAlwaysAccepts) {
  RandomStream rng(1);
  const DistPtr q = Share(kP);
  for (int i = 0; i < 1000; ++i) {
    const Candidate c[] = {Candidate::make(rng.categorical(kP), q,
                                           DraftSource::kHorizontal, 1)};
    const VerificationOutcome out = sequential_verify(kP, c, rng);
    EXPECT_EQ(out.emitted_via, EmitVia::kAccept);
    EXPECT_EQ(out.emitted_token, c[0].token);
    EXPECT_EQ(out.accepted_index, 0);
  }
}

TEST(SequentialVerifyTest, WorkedTwoDraftChain) {
  const DistPtr q1 = Share(kQ);
  const DistPtr q2 = Share(TokenDistribution({1, 0, 0}));
  const Candidate c[] = {
      Candidate::make(1, q1, DraftSource::kVertical, 1),
      Candidate::make(0, q2, DraftSource::kHorizontal, 1)};
  ScriptedSource src({kForceReject, 0.999999}, -1);
  const VerificationOutcome out = sequential_verify(kP, c, src);
  ASSERT_EQ(out.steps.size(), 2u);
  EXPECT_DOUBLE_EQ(out.steps[0].alpha, 0.7);
  EXPECT_FALSE(out.steps[0].accepted);
  ASSERT_TRUE(out.steps[0].residual_after.has_value());
  EXPECT_EQ(out.steps[0].residual_after->values(),
            (std::vector<double>{1, 0, 0}));
  EXPECT_DOUBLE_EQ(out.steps[1].alpha, 1.0);
  EXPECT_TRUE(out.steps[1].accepted);
  EXPECT_EQ(out.emitted_token, 0);
  EXPECT_EQ(out.accepted_index, 1);

  const TokenDistribution drafts[] = {kQ, *q2};
  EXPECT_EQ(rejection_mass(kP, drafts), 0.0);
}

TEST(SequentialVerifyTest, DrawOrderIsOneUniformPerStepThenCategorical) {
  const DistPtr q = Share(kQ);
  const Candidate c[] = {Candidate::make(1, q, DraftSource::kHorizontal, 1),
                         Candidate::make(2, q, DraftSource::kHorizontal, 1)};
  ScriptedSource src({kForceReject, kForceReject}, 0);
  const VerificationOutcome out = sequential_verify(kP, c, src);
  EXPECT_EQ(src.consumed(), 2u);
  EXPECT_EQ(out.emitted_via, EmitVia::kResidualResample);
  EXPECT_EQ(out.accepted_index, -1);
  EXPECT_EQ(src.seen(), (std::vector<double>{1, 0, 0}));
}

TEST(SequentialVerifyTest, DecisionsReplayUniformAgainstRatio) {
  RandomStream gen(31);
  for (int trial = 0; trial < 2000; ++trial) {
    const TokenDistribution p = random_dist(gen, 4, 0.25);
    const DistPtr q = Share(random_dist(gen, 4));
    const int token = gen.categorical(*q);
    const double u = gen.uniform();
    const Candidate c[] = {
        Candidate::make(token, q, DraftSource::kHorizontal, 1)};
    ScriptedSource src({u}, 0);
    const VerificationOutcome out = sequential_verify(p, c, src);
    const double ratio = std::min(1.0, p[token] / (*q)[token]);
    EXPECT_EQ(out.steps[0].accepted, u < ratio);
  }
}

TEST(SequentialVerifyTest, ZeroRatioStepKeepsResidual) {
  // Token 1 carries no target mass, so even u = 0 rejects it; the residual
  // [1,0,0] survives and the point-mass draft that follows must accept.
  const TokenDistribution p({1, 0, 0});
  const DistPtr q1 = Share(TokenDistribution({0.5, 0.5, 0}));
  const DistPtr q2 = Share(TokenDistribution({1, 0, 0}));
  const Candidate c[] = {Candidate::make(1, q1, DraftSource::kHorizontal, 1),
                         Candidate::make(0, q2, DraftSource::kVertical, 1)};
  ScriptedSource src({kForceAccept, kForceReject}, -1);
  const VerificationOutcome out = sequential_verify(p, c, src);
  EXPECT_FALSE(out.steps[0].accepted);
  EXPECT_EQ(out.steps[0].residual_after->values(),
            (std::vector<double>{1, 0, 0}));
  EXPECT_FALSE(out.degenerate);
  EXPECT_TRUE(out.steps[1].accepted);
  EXPECT_EQ(out.emitted_token, 0);
}

std::vector<double> ExhaustiveLaw(const TokenDistribution& p,
                                  const std::vector<DistPtr>& drafts,
                                  const std::vector<DraftSource>& sources) {
  const auto result = ::hawk::testing::exhaustive_law(p, drafts, sources);
  EXPECT_EQ(result.mismatches, 0);
  return result.law;
}

TEST(ExactnessTest, ExhaustiveExpectationEqualsTarget) {
  RandomStream gen(2024);
  int instances = 0;
  for (int trial = 0; trial < 1200; ++trial) {
    const int k = 2 + static_cast<int>(gen.below(3));
    const TokenDistribution p = random_dist(gen, k, 0.2);
    const int m = trial % 3 == 0 ? 3 : 2;
    std::vector<DistPtr> drafts;
    std::vector<DraftSource> sources;
    for (int j = 0; j < m; ++j) {
      drafts.push_back(Share(random_dist(gen, k, 0.2)));
      sources.push_back(j % 2 == 0 ? DraftSource::kVertical
                                   : DraftSource::kHorizontal);
    }
    const std::vector<double> law = ExhaustiveLaw(p, drafts, sources);
    ASSERT_LT(max_abs_diff(law, p.values()), 1e-12) << "trial " << trial;
    ++instances;
  }
  EXPECT_GE(instances, 1000);
}

TEST(ExactnessTest, OrderDoesNotMatter) {
  RandomStream gen(77);
  for (int trial = 0; trial < 200; ++trial) {
    const TokenDistribution p = random_dist(gen, 3);
    const DistPtr qv = Share(random_dist(gen, 3, 0.3));
    const DistPtr qh = Share(random_dist(gen, 3, 0.3));
    const auto vh = ExhaustiveLaw(p, {qv, qh},
                                  {DraftSource::kVertical,
                                   DraftSource::kHorizontal});
    const auto hv = ExhaustiveLaw(p, {qh, qv},
                                  {DraftSource::kHorizontal,
                                   DraftSource::kVertical});
    EXPECT_LT(max_abs_diff(vh, p.values()), 1e-12);
    EXPECT_LT(max_abs_diff(hv, p.values()), 1e-12);
  }
}

TEST(ExactnessTest, EmissionLawAgreesWithLonghand) {
  RandomStream gen(5);
  for (int trial = 0; trial < 500; ++trial) {
    const int k = 3;
    const TokenDistribution p = random_dist(gen, k);
    std::vector<Candidate> cands;
    for (int j = 0; j < 2; ++j) {
      const DistPtr q = Share(random_dist(gen, k));
      cands.push_back(Candidate::make(gen.categorical(*q), q,
                                      DraftSource::kHorizontal, 1));
    }
    std::vector<double> want(k, 0.0), residual = p.values();
    double reach = 1.0;
    for (const Candidate& c : cands) {
      const double ratio =
          std::min(1.0, residual[c.token] / (*c.draft)[c.token]);
      want[c.token] += reach * ratio;
      reach *= 1.0 - ratio;
      residual = longhand_residual(residual, c.draft->values());
    }
    for (int x = 0; x < k; ++x) want[x] += reach * residual[x];
    EXPECT_LT(max_abs_diff(emission_law(p, cands).values(), want), 1e-12);
  }
}

TEST(ExactnessTest, MonteCarloEmittedLawMatchesTarget) {
  RandomStream gen(99);
  for (int instance = 0; instance < 2; ++instance) {
    const int k = 8;
    const TokenDistribution p = random_dist(gen, k, 0.2);
    const std::vector<DistPtr> drafts = {Share(random_dist(gen, k, 0.2)),
                                         Share(random_dist(gen, k, 0.2)),
                                         Share(random_dist(gen, k, 0.2))};
    RandomStream draft_rng(derive_seed(instance, "mc/draft"));
    RandomStream verify_rng(derive_seed(instance, "mc/verify"));
    const int trials = 1'000'000;
    std::vector<double> counts(k, 0.0);
    std::vector<Candidate> cands(3);
    for (int t = 0; t < trials; ++t) {
      for (int j = 0; j < 3; ++j) {
        cands[j] = Candidate{draft_rng.categorical(*drafts[j]), drafts[j],
                             DraftSource::kHorizontal, j + 1};
      }
      counts[sequential_verify(p, cands, verify_rng).emitted_token] += 1.0;
    }
    for (double& c : counts) c /= trials;
    EXPECT_LE(total_variation(TokenDistribution(counts), p), 0.01);
  }
}

TEST(ClassicSpeculativeSamplingTest, SingleDraftSourceMatchesTextbook) {
  // Textbook loop with a single draft distribution, run on a copy of the
  // same stream.
  RandomStream gen(12);
  for (int trial = 0; trial < 2000; ++trial) {
    const int k = 2 + static_cast<int>(gen.below(5));
    const TokenDistribution p = random_dist(gen, k, 0.2);
    const DistPtr q = Share(random_dist(gen, k, 0.2));
    std::vector<Candidate> cands;
    const int m = 1 + static_cast<int>(gen.below(3));
    for (int j = 0; j < m; ++j) {
      cands.push_back(Candidate::make(gen.categorical(*q), q,
                                      DraftSource::kHorizontal, 1));
    }
    RandomStream a(trial), b(trial);
    const VerificationOutcome out = sequential_verify(p, cands, a);
    if (out.degenerate) continue;
    std::vector<double> cur = p.values();
    int emitted = -1;
    for (const Candidate& c : cands) {
      const double u = b.uniform();
      if (u < std::min(1.0, cur[c.token] / (*q)[c.token])) {
        emitted = c.token;
        break;
      }
      cur = longhand_residual(cur, q->values());
    }
    if (emitted < 0) {
      const double u = b.uniform();
      double cdf = 0.0;
      for (int x = 0; x < k; ++x) {
        if (cur[x] <= 0.0) continue;
        emitted = x;
        cdf += cur[x];
        if (u < cdf) break;
      }
    }
    EXPECT_EQ(out.emitted_token, emitted) << trial;
  }
}

TEST(RejectionMassTest, Examples) {
  const TokenDistribution same[] = {kP};
  EXPECT_NEAR(rejection_mass(kP, same), 0.0, 1e-15);
  const TokenDistribution one[] = {kQ};
  EXPECT_NEAR(rejection_mass(kP, one), 0.3, 1e-15);
  // Second copy of q against residual [1,0,0]: alpha 0.2, so 0.3 * 0.8.
  const TokenDistribution two[] = {kQ, kQ};
  EXPECT_NEAR(rejection_mass(kP, two), 0.24, 1e-15);
  EXPECT_EQ(rejection_mass(kP, {}), 1.0);
}

TEST(RejectionMassTest, MonotoneAndFixedPoint) {
  RandomStream gen(6);
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = 2 + static_cast<int>(gen.below(6));
    const TokenDistribution p = random_dist(gen, k, 0.2);
    std::vector<TokenDistribution> chain;
    double previous = 1.0;
    for (int m = 0; m < 6; ++m) {
      chain.push_back(random_dist(gen, k, 0.3));
      const double mass = rejection_mass(p, chain);
      EXPECT_LE(mass, previous + 1e-15);
      EXPECT_GE(mass, 0.0);
      previous = mass;
    }
  }
  // A draft with no overlap with the current residual changes nothing.
  const TokenDistribution first[] = {kQ};
  const TokenDistribution appended[] = {kQ, TokenDistribution({0, 0.5, 0.5})};
  EXPECT_DOUBLE_EQ(rejection_mass(kP, appended), rejection_mass(kP, first));
}

TEST(LanternTest, ReducesToStandardRatio) {
  RandomStream gen(3);
  for (int trial = 0; trial < 300; ++trial) {
    const TokenDistribution p = random_dist(gen, 5);
    const TokenDistribution q = random_dist(gen, 5);
    const int t = static_cast<int>(gen.below(5));
    const int self[] = {t};
    EXPECT_DOUBLE_EQ(lantern_acceptance(p, q, t, self, 1.0),
                     acceptance_ratio(p, q, t));
    const int all[] = {0, 1, 2, 3, 4};
    EXPECT_EQ(lantern_acceptance(p, q, t, all, 1.0), 1.0);
  }
}

TEST(LanternTest, NeverBelowStandardRatio) {
  RandomStream gen(14);
  for (int k : {3, 6, 12}) {
    const LanternRelaxation relax = make_lantern_relaxation(k, 10, 2.0, 5);
    ASSERT_EQ(relax.neighborhoods.size(), static_cast<std::size_t>(k));
    for (int t = 0; t < k; ++t) {
      const auto& hood = relax.neighborhoods[t];
      EXPECT_EQ(hood.size(), static_cast<std::size_t>(std::min(k, 10)));
      EXPECT_NE(std::find(hood.begin(), hood.end(), t), hood.end());
    }
    for (int trial = 0; trial < 500; ++trial) {
      const TokenDistribution p = random_dist(gen, k, 0.3);
      const TokenDistribution q = random_dist(gen, k, 0.3);
      const int t = gen.categorical(q);
      EXPECT_GE(lantern_acceptance(p, q, t, relax.neighborhoods[t], 2.0),
                acceptance_ratio(p, q, t));
    }
  }
}

TEST(LanternTest, RelaxedChainIsNotExact) {
  const TokenDistribution p({0.7, 0.2, 0.1});
  const DistPtr q = Share(TokenDistribution({0.1, 0.2, 0.7}));
  const LanternRelaxation relax = make_lantern_relaxation(3, 2, 2.0, 1);
  std::vector<double> law(3, 0.0);
  for (int t = 0; t < 3; ++t) {
    const Candidate c[] = {Candidate::make(t, q, DraftSource::kHorizontal, 1)};
    const TokenDistribution e = emission_law(p, c, &relax);
    for (int x = 0; x < 3; ++x) law[x] += (*q)[t] * e[x];
  }
  EXPECT_GT(max_abs_diff(law, p.values()), 0.05);
}

TEST(LanternTest, RejectsBadParameters) {
  const int hood[] = {1};
  EXPECT_THROW(lantern_acceptance(kP, kQ, 0, hood, 2.0), ValidationError);
  const int self[] = {0};
  EXPECT_THROW(lantern_acceptance(kP, kQ, 0, self, 0.5), ValidationError);
  EXPECT_THROW(make_lantern_relaxation(4, 0, 2.0, 1), ValidationError);
}

TEST(CandidateTest, MakeValidates) {
  const DistPtr q = Share(TokenDistribution({1, 0}));
  EXPECT_THROW(Candidate::make(1, q, DraftSource::kHorizontal, 1),
               ValidationError);
  EXPECT_THROW(Candidate::make(0, nullptr, DraftSource::kHorizontal, 1),
               ValidationError);
  EXPECT_EQ(source_tag(DraftSource::kVertical, 2), "V2");
  EXPECT_EQ(source_tag(DraftSource::kHorizontal, 1), "H1");
}

}  // namespace
}  // namespace hawk
