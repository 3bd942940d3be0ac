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

#include <optional>
#include <span>
#include <vector>

namespace hawk {

// Entries summing to 1 within kSumTolerance are accepted as a distribution.
inline constexpr double kSumTolerance = 1e-9;
// Negative entries no smaller than -kClampTolerance are clamped to zero.
inline constexpr double kClampTolerance = 1e-12;

// A probability vector over the vocabulary. Immutable once constructed;
// the constructor enforces non-negativity and unit mass.
class TokenDistribution {
 public:
  explicit TokenDistribution(std::vector<double> probs);

  static TokenDistribution uniform(int vocab_size);
  static TokenDistribution point_mass(int vocab_size, int token);

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int token) const { return probs_[token]; }
  std::span<const double> probs() const { return probs_; }
  const std::vector<double>& values() const { return probs_; }

  friend bool operator==(const TokenDistribution&,
                         const TokenDistribution&) = default;

 private:
  std::vector<double> probs_;
};

struct NormalizeResult {
  TokenDistribution dist;
  // True when the input carried no mass and `dist` is the uniform fallback.
  bool degenerate = false;
};

// Divides by the total mass. Zero total mass yields the uniform fallback with
// `degenerate` set. Throws ValidationError on negative or non-finite weights.
NormalizeResult normalize(std::span<const double> weights);

// normalize(p^(1/tau)); evaluated relative to the largest entry so that small
// temperatures do not underflow.
TokenDistribution apply_temperature(const TokenDistribution& dist,
                                    double temperature);

// Keeps the k most probable tokens (ties at the cutoff go to the lowest
// index) and renormalizes. k >= vocab size is the identity.
TokenDistribution apply_top_k(const TokenDistribution& dist, int k);

struct SamplingConfig {
  std::optional<int> top_k;  // nullopt means "all"
  double temperature = 1.0;

  void validate() const;
  friend bool operator==(const SamplingConfig&,
                         const SamplingConfig&) = default;
};

// Temperature followed by top-k. The two commute: top-k selection is
// invariant under the monotone power map.
TokenDistribution apply_sampling(const TokenDistribution& dist,
                                 const SamplingConfig& config);

// KL(p || q) in nats. Returns +infinity when p puts mass where q has none.
double kl_divergence(const TokenDistribution& p, const TokenDistribution& q);

// 0.5 * sum |p - q|.
double total_variation(const TokenDistribution& p, const TokenDistribution& q);

}  // namespace hawk
