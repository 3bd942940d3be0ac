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

#include "hawk/speculation_cache.hpp"

#include <cassert>
#include <stdexcept>
#include <string>

#include "hawk/errors.hpp"

namespace hawk {

long long cache_capacity(int image_width, int vertical_depth) {
  if (image_width < 1) throw ValidationError("image width must be >= 1");
  if (vertical_depth < 0) throw ValidationError("vertical depth must be >= 0");
  const long long vsd = vertical_depth;
  return static_cast<long long>(image_width) * (vsd * (vsd + 1)) / 2;
}

long long vertical_target_index(long long source_index, int image_width,
                                int depth) {
  if (depth < 1) throw ValidationError("vertical depth must be >= 1");
  return source_index + static_cast<long long>(image_width) * depth;
}

std::optional<int> vertical_target_in_grid(int source_index, int depth,
                                           const GridSpec& grid) {
  const long long target =
      vertical_target_index(source_index, grid.width, depth);
  if (target >= grid.size()) return std::nullopt;
  return static_cast<int>(target);
}

SpeculationCache::SpeculationCache(const GridSpec& grid, int vertical_depth)
    : grid_(grid),
      vertical_depth_(vertical_depth),
      capacity_(cache_capacity(grid.width, vertical_depth)) {}

void SpeculationCache::insert(int target_index, int depth,
                              std::shared_ptr<const TokenDistribution> dist) {
  if (depth < 1 || depth > vertical_depth_) {
    throw ValidationError("cache depth " + std::to_string(depth) +
                          " outside 1.." + std::to_string(vertical_depth_));
  }
  auto [it, inserted] = entries_.insert_or_assign({target_index, depth},
                                                  std::move(dist));
  (void)it;
  if (inserted && static_cast<long long>(entries_.size()) > capacity_) {
    entries_.erase(it);
    throw std::logic_error("speculation cache overflow: capacity " +
                           std::to_string(capacity_));
  }
}

void SpeculationCache::evict_before(int frontier) {
  // Keys sort by target index first.
  entries_.erase(entries_.begin(), entries_.lower_bound({frontier, 0}));
}

std::vector<VerticalEntry> SpeculationCache::gather(int target_index) const {
  std::vector<VerticalEntry> out;
  for (auto it = entries_.lower_bound({target_index, 0});
       it != entries_.end() && it->first.first == target_index; ++it) {
    out.push_back(VerticalEntry{it->first.second, it->second});
  }
  return out;
}

std::optional<int> SpeculationCache::lowest_target() const {
  if (entries_.empty()) return std::nullopt;
  return entries_.begin()->first.first;
}

void cache_insert_on_commit(SpeculationCache& cache, const DraftHeadSet& heads,
                            std::span<const int> committed,
                            const GridSpec& grid,
                            const SamplingConfig* draft_transform) {
  if (committed.empty()) throw StateError("nothing committed");
  const int frontier = static_cast<int>(committed.size());
  const int source = frontier - 1;
  cache.evict_before(frontier);
  const int depth_limit = std::min(cache.vertical_depth(), heads.vertical_depth());
  for (int d = 1; d <= depth_limit; ++d) {
    const auto target = vertical_target_in_grid(source, d, grid);
    if (!target) continue;
    const DraftHead& head = *heads.vertical[d - 1];
    assert(head.offset() == d * grid.width);
    TokenDistribution q = head.predict(committed);
    if (draft_transform) q = apply_sampling(q, *draft_transform);
    cache.insert(*target, d,
                 std::make_shared<const TokenDistribution>(std::move(q)));
  }
}

std::vector<VerticalEntry> gather_vert_spec(const SpeculationCache& cache,
                                            int target_index) {
  return cache.gather(target_index);
}

}  // namespace hawk
