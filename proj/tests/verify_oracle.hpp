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

#include <algorithm>
#include <memory>
#include <vector>

#include "hawk/verifier.hpp"
#include "test_support.hpp"

namespace hawk::testing {

// Replays fixed uniforms and answers the final draw with a chosen token,
// remembering the distribution it was asked to sample.
class ScriptedSource {
 public:
  ScriptedSource(std::vector<double> uniforms, int token)
      : uniforms_(std::move(uniforms)), token_(token) {}
  double uniform() { return uniforms_.at(next_++); }
  int categorical(const TokenDistribution& d) {
    seen_ = d.values();
    return token_;
  }
  const std::vector<double>& seen() const { return seen_; }
  std::size_t consumed() const { return next_; }

 private:
  std::vector<double> uniforms_;
  std::size_t next_ = 0;
  int token_;
  std::vector<double> seen_;
};

inline constexpr double kForceAccept = 0.0;
inline constexpr double kForceReject = 1.0 - 0x1.0p-53;

struct ExhaustiveResult {
  std::vector<double> law;
  // Branches where the verifier's decision or resample law disagreed with
  // the longhand walk.
  int mismatches = 0;
};

// Expected emitted-token law summed over every sample path: candidate tokens
// drawn from their drafts, each accept/reject outcome, and the final residual
// draw. Branch decisions are taken from sequential_verify under forced
// uniforms; weights and residuals come from longhand arithmetic.
inline ExhaustiveResult exhaustive_law(
    const TokenDistribution& p,
    const std::vector<std::shared_ptr<const TokenDistribution>>& drafts,
    const std::vector<DraftSource>& sources) {
  const int k = p.size();
  const int m = static_cast<int>(drafts.size());
  ExhaustiveResult result;
  result.law.assign(k, 0.0);
  std::vector<int> tokens(m, 0);
  while (true) {
    double weight = 1.0;
    for (int j = 0; j < m; ++j) weight *= (*drafts[j])[tokens[j]];
    if (weight > 0.0) {
      std::vector<Candidate> cands;
      for (int j = 0; j < m; ++j) {
        cands.push_back(Candidate::make(tokens[j], drafts[j], sources[j], 1));
      }
      std::vector<double> residual = p.values();
      double reach = 1.0;
      for (int j = 0; j < m && reach > 0.0; ++j) {
        const double ratio =
            std::min(1.0, residual[tokens[j]] / (*drafts[j])[tokens[j]]);
        if (ratio > 0.0) {
          std::vector<double> u(m, kForceReject);
          u[j] = kForceAccept;
          ScriptedSource src(u, -1);
          const VerificationOutcome out = sequential_verify(p, cands, src);
          if (out.accepted_index != j || out.emitted_token != tokens[j]) {
            ++result.mismatches;
          }
          result.law[tokens[j]] += weight * reach * ratio;
        }
        reach *= 1.0 - ratio;
        if (longhand_alpha(residual, drafts[j]->values()) >= 1.0) {
          reach = 0.0;
        } else {
          residual = longhand_residual(residual, drafts[j]->values());
        }
      }
      if (reach > 0.0) {
        ScriptedSource src(std::vector<double>(m, kForceReject), 0);
        const VerificationOutcome out = sequential_verify(p, cands, src);
        if (out.emitted_via != EmitVia::kResidualResample ||
            max_abs_diff(src.seen(), residual) > 1e-12) {
          ++result.mismatches;
        }
        for (int x = 0; x < k; ++x) {
          result.law[x] += weight * reach * residual[x];
        }
      }
    }
    int j = 0;
    while (j < m && ++tokens[j] == k) tokens[j++] = 0;
    if (j == m) break;
  }
  return result;
}

}  // namespace hawk::testing
