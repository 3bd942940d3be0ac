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

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hawk/distribution.hpp"
#include "hawk/random.hpp"

namespace hawk {

enum class DraftSource { kHorizontal, kVertical };

// "H<depth>" / "V<depth>", as used in trace files.
std::string source_tag(DraftSource source, int head_depth);

// A drafted token together with the distribution it was sampled from.
struct Candidate {
  int token = 0;
  std::shared_ptr<const TokenDistribution> draft;
  DraftSource source = DraftSource::kHorizontal;
  int head_depth = 1;

  // Throws ValidationError unless draft(token) > 0.
  static Candidate make(int token, std::shared_ptr<const TokenDistribution> draft,
                        DraftSource source, int head_depth);
};

struct VerifyStepRecord {
  int token = 0;
  DraftSource source = DraftSource::kHorizontal;
  int head_depth = 1;
  // Acceptance mass sum_x min(p_current(x), q(x)) of this step.
  double alpha = 0.0;
  bool accepted = false;
  // Distribution carried to the next step; absent on acceptance.
  std::optional<TokenDistribution> residual_after;
};

enum class EmitVia { kAccept, kResidualResample };

struct VerificationOutcome {
  std::vector<VerifyStepRecord> steps;
  int emitted_token = 0;
  EmitVia emitted_via = EmitVia::kResidualResample;
  int accepted_index = -1;  // candidate index, -1 when resampled
  // The residual chain ran out of mass before the last candidate.
  bool degenerate = false;
};

// Relaxed acceptance in the style of LANTERN++: each token's latent
// neighbourhood A_k and a multiplicative bonus lambda. Not
// distribution-preserving.
struct LanternRelaxation {
  std::vector<std::vector<int>> neighborhoods;  // indexed by token
  double lambda = 1.0;
};

// min(1, p(token) / q(token)). Throws ValidationError if q(token) == 0.
double acceptance_ratio(const TokenDistribution& p, const TokenDistribution& q,
                        int token);

// sum_x min(p(x), q(x)): the probability that a token drawn from q is
// accepted against p.
double acceptance_mass(const TokenDistribution& p, const TokenDistribution& q);

// norm(max(0, p - q)); degenerate (uniform fallback) iff p <= q entrywise.
NormalizeResult residual_update(const TokenDistribution& p,
                                const TokenDistribution& q);

// min(1, lambda * sum_{x in A} p(x) / q(token)). With A = {token} and
// lambda = 1 this is acceptance_ratio. q(token) == 0 returns 1 and sets
// *clipped when given.
double lantern_acceptance(const TokenDistribution& p,
                          const TokenDistribution& q, int token,
                          std::span<const int> neighborhood, double lambda,
                          bool* clipped = nullptr);

// Seeded 2-D embedding points per token; A_k(t) = the k nearest tokens to t
// (t included, ties to the lower index). k is clipped to the vocabulary.
LanternRelaxation make_lantern_relaxation(int vocab_size, int k, double lambda,
                                          std::uint64_t seed);

namespace internal {

struct StepDecision {
  double alpha;
  double ratio;
};

StepDecision evaluate_step(const TokenDistribution& current,
                           const Candidate& candidate,
                           const LanternRelaxation* relax);

void validate_candidates(const TokenDistribution& p,
                         std::span<const Candidate> candidates);

}  // namespace internal

// Sequential multi-draft verification. Candidate i is accepted with
// probability ratio(p_i, q_i, token_i) where p_1 = p and
// p_{i+1} = residual_update(p_i, q_i); the first acceptance is emitted. If
// every candidate is rejected the emitted token is drawn from the last
// residual. Once a residual runs out of mass the remaining candidates are
// rejected and the resample uses the last non-degenerate residual.
//
// Draw order: one uniform() per candidate, then one categorical() if all
// were rejected. `Source` is RandomStream in production; tests script it.
template <typename Source>
VerificationOutcome sequential_verify(const TokenDistribution& p,
                                      std::span<const Candidate> candidates,
                                      Source& rng,
                                      const LanternRelaxation* relax = nullptr) {
  internal::validate_candidates(p, candidates);
  VerificationOutcome outcome;
  outcome.steps.reserve(candidates.size());
  TokenDistribution current = p;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Candidate& c = candidates[i];
    const double u = rng.uniform();
    const internal::StepDecision step =
        internal::evaluate_step(current, c, relax);
    VerifyStepRecord record{c.token, c.source, c.head_depth, step.alpha, false,
                            std::nullopt};
    if (!outcome.degenerate && u < step.ratio) {
      record.accepted = true;
      outcome.steps.push_back(std::move(record));
      outcome.emitted_token = c.token;
      outcome.emitted_via = EmitVia::kAccept;
      outcome.accepted_index = static_cast<int>(i);
      return outcome;
    }
    if (!outcome.degenerate) {
      NormalizeResult next = residual_update(current, *c.draft);
      if (next.degenerate) {
        outcome.degenerate = true;
      } else {
        current = std::move(next.dist);
      }
    }
    record.residual_after = current;
    outcome.steps.push_back(std::move(record));
  }
  outcome.emitted_token = rng.categorical(current);
  outcome.emitted_via = EmitVia::kResidualResample;
  return outcome;
}

// Exact law of the token emitted by sequential_verify for fixed candidate
// tokens, marginalised over the verifier's own randomness.
TokenDistribution emission_law(const TokenDistribution& p,
                               std::span<const Candidate> candidates,
                               const LanternRelaxation* relax = nullptr);

// prod_j (1 - alpha_j) along the residual chain: the probability that every
// draft in `drafts` is rejected. An empty chain gives 1.
double rejection_mass(const TokenDistribution& p,
                      std::span<const TokenDistribution> drafts);

}  // namespace hawk
