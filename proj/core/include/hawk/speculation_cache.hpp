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

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hawk/distribution.hpp"
#include "hawk/grid.hpp"
#include "hawk/heads.hpp"

namespace hawk {

// IW * VSD * (VSD + 1) / 2: one row's worth of depth-1 predictions, two rows
// of depth-2 predictions, and so on.
long long cache_capacity(int image_width, int vertical_depth);

// T + IW * d.
long long vertical_target_index(long long source_index, int image_width,
                                int depth);

// vertical_target_index, or nullopt when the target lies past the grid end.
std::optional<int> vertical_target_in_grid(int source_index, int depth,
                                           const GridSpec& grid);

struct VerticalEntry {
  int depth = 0;
  std::shared_ptr<const TokenDistribution> dist;
};

// Vertical draft distributions waiting for decoding to reach their target
// position, keyed by (target raster index, depth).
class SpeculationCache {
 public:
  SpeculationCache(const GridSpec& grid, int vertical_depth);

  long long capacity() const { return capacity_; }
  int size() const { return static_cast<int>(entries_.size()); }
  int vertical_depth() const { return vertical_depth_; }

  // Throws std::logic_error when the insert would exceed capacity; live
  // entries are never dropped to make room.
  void insert(int target_index, int depth,
              std::shared_ptr<const TokenDistribution> dist);

  // Drops every entry whose target index is below `frontier`.
  void evict_before(int frontier);

  // Entries targeting `target_index`, ordered by depth.
  std::vector<VerticalEntry> gather(int target_index) const;

  // Lowest target index currently stored (or nullopt when empty).
  std::optional<int> lowest_target() const;

 private:
  GridSpec grid_;
  int vertical_depth_;
  long long capacity_;
  std::map<std::pair<int, int>, std::shared_ptr<const TokenDistribution>>
      entries_;
};

// Evicts entries behind the new frontier, then evaluates each vertical head
// of depth 1..VSD on `committed` (whose last token sits at raster index
// committed.size() - 1) and stores its output under
// (committed.size() - 1 + IW * d, d). Targets past the grid are skipped.
void cache_insert_on_commit(SpeculationCache& cache, const DraftHeadSet& heads,
                            std::span<const int> committed,
                            const GridSpec& grid,
                            const SamplingConfig* draft_transform = nullptr);

// The vertical sampling space for `target_index`: one entry per depth d,
// each written when the token d rows above was committed.
std::vector<VerticalEntry> gather_vert_spec(const SpeculationCache& cache,
                                            int target_index);

}  // namespace hawk
