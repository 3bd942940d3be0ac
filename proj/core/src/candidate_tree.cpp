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

#include "hawk/candidate_tree.hpp"

#include <algorithm>
#include <limits>

#include "hawk/errors.hpp"

namespace hawk {

namespace {

constexpr long long kSaturated = std::numeric_limits<long long>::max() / 4;

long long saturating_mul(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

}  // namespace

std::optional<SamplingPool> build_pool(
    const SpeculationCache* cache, const GridSpec& grid, int frontier,
    int tree_depth, std::shared_ptr<const TokenDistribution> horizontal) {
  if (tree_depth < 1) throw ValidationError("tree depth must be >= 1");
  const int position = frontier + tree_depth - 1;
  if (position >= grid.size()) return std::nullopt;
  SamplingPool pool;
  pool.position = position;
  pool.tree_depth = tree_depth;
  pool.horizontal = std::move(horizontal);
  if (cache) pool.vertical = gather_vert_spec(*cache, position);
  return pool;
}

CandidateTree::CandidateTree(std::vector<std::vector<Candidate>> layers,
                             long long node_budget)
    : layers_(std::move(layers)), node_budget_(node_budget) {
  if (node_budget_ < 1) throw ValidationError("node budget must be >= 1");
  strides_.assign(layers_.size(), 1);
  for (int m = depth() - 2; m >= 0; --m) {
    strides_[m] = saturating_mul(
        strides_[m + 1], static_cast<long long>(layers_[m + 1].size()));
  }
}

int CandidateTree::child_count(std::span<const int> path) const {
  const int n = static_cast<int>(path.size());
  if (n >= depth()) return 0;
  long long rank = 0;
  for (int m = 0; m < n; ++m) {
    rank = std::min(kSaturated,
                    rank + saturating_mul(path[m], strides_[m]));
  }
  if (rank >= node_budget_) return 0;
  const long long room = node_budget_ - rank;
  const long long fits = (room + strides_[n] - 1) / strides_[n];
  return static_cast<int>(
      std::min<long long>(fits, static_cast<long long>(layers_[n].size())));
}

long long CandidateTree::path_count() const {
  if (layers_.empty()) return 0;
  const long long total = saturating_mul(
      strides_[0], static_cast<long long>(layers_[0].size()));
  return std::min(total, node_budget_);
}

CandidateTree build_candidate_tree(std::span<const SamplingPool> pools,
                                   const TreeShape& shape, RandomStream& rng) {
  if (shape.samples_horizontal < 0 || shape.samples_vertical < 0) {
    throw ValidationError("candidate counts must be >= 0");
  }
  if (pools.empty()) throw ValidationError("no sampling pool at depth 1");

  auto draw = [&](std::vector<Candidate>& out,
                  const std::shared_ptr<const TokenDistribution>& dist,
                  DraftSource source, int head_depth, int count) {
    for (int s = 0; s < count; ++s) {
      out.push_back(Candidate{rng.categorical(*dist), dist, source, head_depth});
    }
  };

  std::vector<std::vector<Candidate>> layers;
  for (const SamplingPool& pool : pools) {
    std::vector<Candidate> layer;
    auto draw_vertical = [&] {
      for (const VerticalEntry& entry : pool.vertical) {
        draw(layer, entry.dist, DraftSource::kVertical, entry.depth,
             shape.samples_vertical);
      }
    };
    auto draw_horizontal = [&] {
      if (pool.horizontal) {
        draw(layer, pool.horizontal, DraftSource::kHorizontal, pool.tree_depth,
             shape.samples_horizontal);
      }
    };
    if (shape.order == VerifyOrder::kVerticalFirst) {
      draw_vertical();
      draw_horizontal();
    } else {
      draw_horizontal();
      draw_vertical();
    }
    if (layer.empty()) break;
    layers.push_back(std::move(layer));
  }
  if (layers.empty()) {
    throw ValidationError("sampling pool at depth 1 yields no candidates");
  }
  return CandidateTree(std::move(layers), shape.node_budget);
}

}  // namespace hawk
