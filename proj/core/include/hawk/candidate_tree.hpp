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

#include <memory>
#include <span>
#include <vector>

#include "hawk/distribution.hpp"
#include "hawk/random.hpp"
#include "hawk/speculation_cache.hpp"
#include "hawk/verifier.hpp"

namespace hawk {

// Draft distributions available for one speculated position: the horizontal
// head's prediction plus whatever vertical predictions the cache holds.
struct SamplingPool {
  int position = 0;    // target raster index
  int tree_depth = 1;  // n, with position = frontier + n - 1
  std::shared_ptr<const TokenDistribution> horizontal;
  std::vector<VerticalEntry> vertical;
};

// HorizSpec(T + n) merged with VertSpec(T + n). Returns nullopt when
// `position` lies past the grid end.
std::optional<SamplingPool> build_pool(
    const SpeculationCache* cache, const GridSpec& grid, int frontier,
    int tree_depth, std::shared_ptr<const TokenDistribution> horizontal);

enum class VerifyOrder { kVerticalFirst, kHorizontalFirst };

struct TreeShape {
  int samples_horizontal = 1;  // s_h draws from the horizontal distribution
  int samples_vertical = 1;    // s_v draws from each vertical distribution
  long long node_budget = 64;  // maximum number of root-to-leaf paths
  VerifyOrder order = VerifyOrder::kVerticalFirst;
};

// Layers of candidates whose root-to-leaf paths are the Cartesian product of
// the layers, in lexicographic (depth-first) order, truncated to the first
// node_budget paths.
class CandidateTree {
 public:
  CandidateTree(std::vector<std::vector<Candidate>> layers,
                long long node_budget);

  int depth() const { return static_cast<int>(layers_.size()); }
  // 0-based layer index; layer(0) holds the depth-1 candidates.
  const std::vector<Candidate>& layer(int index) const { return layers_[index]; }

  // Number of children kept under the node reached by `path`, where path[m]
  // is the candidate index chosen at layer m. Children are always a prefix of
  // the next layer.
  int child_count(std::span<const int> path) const;

  long long path_count() const;

 private:
  std::vector<std::vector<Candidate>> layers_;
  std::vector<long long> strides_;  // saturating products of later layers
  long long node_budget_;
};

// Samples s_h / s_v candidates per pool and stacks them into layers. Layers
// stop at the first pool that yields no candidates. Throws ValidationError
// when the first pool is missing or yields nothing.
CandidateTree build_candidate_tree(std::span<const SamplingPool> pools,
                                   const TreeShape& shape, RandomStream& rng);

}  // namespace hawk
