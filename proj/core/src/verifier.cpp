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

#include "hawk/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hawk/errors.hpp"

namespace hawk {

std::string source_tag(DraftSource source, int head_depth) {
  return (source == DraftSource::kVertical ? "V" : "H") +
         std::to_string(head_depth);
}

Candidate Candidate::make(int token,
                          std::shared_ptr<const TokenDistribution> draft,
                          DraftSource source, int head_depth) {
  if (!draft) throw ValidationError("candidate without a draft distribution");
  if (token < 0 || token >= draft->size() || (*draft)[token] <= 0.0) {
    throw ValidationError("candidate token " + std::to_string(token) +
                          " has zero draft probability");
  }
  return Candidate{token, std::move(draft), source, head_depth};
}

double acceptance_ratio(const TokenDistribution& p, const TokenDistribution& q,
                        int token) {
  if (p.size() != q.size()) throw ValidationError("p/q length mismatch");
  if (token < 0 || token >= q.size()) {
    throw ValidationError("token outside vocabulary");
  }
  if (q[token] <= 0.0) {
    throw ValidationError("acceptance ratio undefined: q(token) = 0");
  }
  return std::min(1.0, p[token] / q[token]);
}

double acceptance_mass(const TokenDistribution& p, const TokenDistribution& q) {
  if (p.size() != q.size()) throw ValidationError("p/q length mismatch");
  double mass = 0.0;
  for (int x = 0; x < p.size(); ++x) mass += std::min(p[x], q[x]);
  return std::clamp(mass, 0.0, 1.0);
}

NormalizeResult residual_update(const TokenDistribution& p,
                                const TokenDistribution& q) {
  if (p.size() != q.size()) throw ValidationError("p/q length mismatch");
  std::vector<double> leftover(p.size());
  for (int x = 0; x < p.size(); ++x) leftover[x] = std::max(0.0, p[x] - q[x]);
  return normalize(leftover);
}

double lantern_acceptance(const TokenDistribution& p,
                          const TokenDistribution& q, int token,
                          std::span<const int> neighborhood, double lambda,
                          bool* clipped) {
  if (p.size() != q.size()) throw ValidationError("p/q length mismatch");
  if (!(lambda >= 1.0)) throw ValidationError("lantern lambda must be >= 1");
  if (std::find(neighborhood.begin(), neighborhood.end(), token) ==
      neighborhood.end()) {
    throw ValidationError("lantern neighbourhood must contain the token");
  }
  if (clipped) *clipped = false;
  if (q[token] <= 0.0) {
    if (clipped) *clipped = true;
    return 1.0;
  }
  double mass = 0.0;
  for (int x : neighborhood) {
    if (x < 0 || x >= p.size()) {
      throw ValidationError("neighbourhood token outside vocabulary");
    }
    mass += p[x];
  }
  return std::min(1.0, lambda * mass / q[token]);
}

LanternRelaxation make_lantern_relaxation(int vocab_size, int k, double lambda,
                                          std::uint64_t seed) {
  if (vocab_size < 1) throw ValidationError("vocab_size must be >= 1");
  if (k < 1) throw ValidationError("lantern k must be >= 1");
  if (!(lambda >= 1.0)) throw ValidationError("lantern lambda must be >= 1");
  const int kk = std::min(k, vocab_size);
  RandomStream rng = RandomStream::derive(seed, "lantern-embedding");
  std::vector<std::pair<double, double>> points(vocab_size);
  for (auto& [x, y] : points) {
    x = rng.uniform();
    y = rng.uniform();
  }
  LanternRelaxation relax;
  relax.lambda = lambda;
  relax.neighborhoods.resize(vocab_size);
  std::vector<int> order(vocab_size);
  std::vector<double> dist2(vocab_size);
  for (int t = 0; t < vocab_size; ++t) {
    for (int u = 0; u < vocab_size; ++u) {
      const double dx = points[u].first - points[t].first;
      const double dy = points[u].second - points[t].second;
      dist2[u] = u == t ? -1.0 : dx * dx + dy * dy;
    }
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return dist2[a] < dist2[b]; });
    relax.neighborhoods[t].assign(order.begin(), order.begin() + kk);
  }
  return relax;
}

namespace internal {

StepDecision evaluate_step(const TokenDistribution& current,
                           const Candidate& candidate,
                           const LanternRelaxation* relax) {
  const TokenDistribution& q = *candidate.draft;
  const double alpha = acceptance_mass(current, q);
  const double ratio =
      relax ? lantern_acceptance(current, q, candidate.token,
                                 relax->neighborhoods.at(candidate.token),
                                 relax->lambda)
            : acceptance_ratio(current, q, candidate.token);
  return {alpha, ratio};
}

void validate_candidates(const TokenDistribution& p,
                         std::span<const Candidate> candidates) {
  for (const Candidate& c : candidates) {
    if (!c.draft || c.draft->size() != p.size()) {
      throw ValidationError("candidate draft does not match the vocabulary");
    }
    if (c.token < 0 || c.token >= p.size() || (*c.draft)[c.token] <= 0.0) {
      throw ValidationError("candidate token has zero draft probability");
    }
  }
}

}  // namespace internal

TokenDistribution emission_law(const TokenDistribution& p,
                               std::span<const Candidate> candidates,
                               const LanternRelaxation* relax) {
  internal::validate_candidates(p, candidates);
  std::vector<double> law(p.size(), 0.0);
  double reach = 1.0;
  bool degenerate = false;
  TokenDistribution current = p;
  for (const Candidate& c : candidates) {
    if (degenerate) break;
    const double ratio = internal::evaluate_step(current, c, relax).ratio;
    law[c.token] += reach * ratio;
    reach *= 1.0 - ratio;
    NormalizeResult next = residual_update(current, *c.draft);
    if (next.degenerate) {
      degenerate = true;
    } else {
      current = std::move(next.dist);
    }
  }
  for (int x = 0; x < p.size(); ++x) law[x] += reach * current[x];
  return normalize(law).dist;
}

double rejection_mass(const TokenDistribution& p,
                      std::span<const TokenDistribution> drafts) {
  double mass = 1.0;
  TokenDistribution current = p;
  for (const TokenDistribution& q : drafts) {
    mass *= 1.0 - acceptance_mass(current, q);
    NormalizeResult next = residual_update(current, q);
    if (next.degenerate) return 0.0;
    current = std::move(next.dist);
  }
  return mass;
}

}  // namespace hawk
