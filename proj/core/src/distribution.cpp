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

#include "hawk/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hawk/errors.hpp"

namespace hawk {

namespace {

void require_same_size(const TokenDistribution& p, const TokenDistribution& q) {
  if (p.size() != q.size()) {
    throw ValidationError("distribution length mismatch: " +
                          std::to_string(p.size()) + " vs " +
                          std::to_string(q.size()));
  }
}

}  // namespace

TokenDistribution::TokenDistribution(std::vector<double> probs)
    : probs_(std::move(probs)) {
  if (probs_.empty()) throw ValidationError("empty distribution");
  double total = 0.0;
  for (double& x : probs_) {
    if (!std::isfinite(x)) throw ValidationError("non-finite probability");
    if (x < 0.0) {
      if (x < -kClampTolerance) {
        throw ValidationError("negative probability " + std::to_string(x));
      }
      x = 0.0;
    }
    total += x;
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw ValidationError("probabilities sum to " + std::to_string(total));
  }
}

TokenDistribution TokenDistribution::uniform(int vocab_size) {
  if (vocab_size < 1) throw ValidationError("vocab_size must be >= 1");
  return TokenDistribution(
      std::vector<double>(vocab_size, 1.0 / static_cast<double>(vocab_size)));
}

TokenDistribution TokenDistribution::point_mass(int vocab_size, int token) {
  if (token < 0 || token >= vocab_size) {
    throw ValidationError("point mass token out of range");
  }
  std::vector<double> probs(vocab_size, 0.0);
  probs[token] = 1.0;
  return TokenDistribution(std::move(probs));
}

NormalizeResult normalize(std::span<const double> weights) {
  if (weights.empty()) throw ValidationError("cannot normalize empty weights");
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw ValidationError("normalize: weights must be finite and >= 0");
    }
    total += w;
  }
  const int k = static_cast<int>(weights.size());
  if (total <= 0.0) return {TokenDistribution::uniform(k), true};
  std::vector<double> probs(weights.begin(), weights.end());
  for (double& x : probs) x /= total;
  return {TokenDistribution(std::move(probs)), false};
}

TokenDistribution apply_temperature(const TokenDistribution& dist,
                                    double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw ValidationError("temperature must be > 0");
  }
  if (temperature == 1.0) return dist;
  const auto probs = dist.probs();
  const double top = *std::max_element(probs.begin(), probs.end());
  const double log_top = std::log(top);
  std::vector<double> weights(probs.size(), 0.0);
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) {
      weights[i] = std::exp((std::log(probs[i]) - log_top) / temperature);
    }
  }
  return normalize(weights).dist;
}

TokenDistribution apply_top_k(const TokenDistribution& dist, int k) {
  if (k < 1) throw ValidationError("top_k must be >= 1");
  if (k >= dist.size()) return dist;
  std::vector<int> order(dist.size());
  std::iota(order.begin(), order.end(), 0);
  // Stable sort keeps lower indices first among equal probabilities.
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return dist[a] > dist[b]; });
  std::vector<double> weights(dist.size(), 0.0);
  for (int i = 0; i < k; ++i) weights[order[i]] = dist[order[i]];
  return normalize(weights).dist;
}

void SamplingConfig::validate() const {
  if (top_k && *top_k < 1) throw ValidationError("top_k must be >= 1");
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw ValidationError("temperature must be > 0");
  }
}

TokenDistribution apply_sampling(const TokenDistribution& dist,
                                 const SamplingConfig& config) {
  TokenDistribution out = apply_temperature(dist, config.temperature);
  if (config.top_k) out = apply_top_k(out, *config.top_k);
  return out;
}

double kl_divergence(const TokenDistribution& p, const TokenDistribution& q) {
  require_same_size(p, q);
  double kl = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return std::numeric_limits<double>::infinity();
    kl += p[i] * std::log(p[i] / q[i]);
  }
  // Rounding can push the sum a hair below zero for p ~ q.
  return std::max(kl, 0.0);
}

double total_variation(const TokenDistribution& p, const TokenDistribution& q) {
  require_same_size(p, q);
  double tv = 0.0;
  for (int i = 0; i < p.size(); ++i) tv += std::abs(p[i] - q[i]);
  return std::min(0.5 * tv, 1.0);
}

}  // namespace hawk
