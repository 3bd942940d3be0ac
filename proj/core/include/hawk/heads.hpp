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
#include <span>
#include <vector>

#include "hawk/distribution.hpp"
#include "hawk/grid.hpp"
#include "hawk/models.hpp"

namespace hawk {

// Predicts the token `offset` raster positions past the last committed one,
// i.e. position prefix.size() - 1 + offset(). Horizontal depth d uses offset
// d; vertical depth v uses offset v * width. A head only ever sees the
// committed prefix.
class DraftHead {
 public:
  explicit DraftHead(int offset);
  virtual ~DraftHead() = default;

  int offset() const { return offset_; }
  virtual TokenDistribution predict(std::span<const int> prefix) const = 0;

 private:
  int offset_;
};

// Maximum-likelihood tables keyed by the context signature
// (second-to-last token, last token, column of the last token); missing
// entries (short prefixes) use the value vocab_size / width respectively.
class TabularDraftHead final : public DraftHead {
 public:
  TabularDraftHead(GridSpec grid, int offset,
                   std::vector<TokenDistribution> tables);

  static int context_count(const GridSpec& grid);
  static int context_id(std::span<const int> prefix, const GridSpec& grid);

  TokenDistribution predict(std::span<const int> prefix) const override;
  const std::vector<TokenDistribution>& tables() const { return tables_; }
  const GridSpec& grid() const { return grid_; }

 private:
  GridSpec grid_;
  std::vector<TokenDistribution> tables_;
};

// Returns the target's own conditional at the predicted position. Only valid
// for prefix-independent targets.
class ExactDraftHead final : public DraftHead {
 public:
  ExactDraftHead(std::shared_ptr<const TargetModel> model, int offset);

  // Throws BoundsError when the predicted position lies past the grid.
  TokenDistribution predict(std::span<const int> prefix) const override;

 private:
  std::shared_ptr<const TargetModel> model_;
};

// Heads for horizontal depths 1..H and vertical depths 1..VSD.
struct DraftHeadSet {
  std::vector<std::shared_ptr<const DraftHead>> horizontal;
  std::vector<std::shared_ptr<const DraftHead>> vertical;

  int horizontal_depth() const { return static_cast<int>(horizontal.size()); }
  int vertical_depth() const { return static_cast<int>(vertical.size()); }

  // Checks H >= 1 and that offsets are d and v * width for contiguous depths.
  void validate(const GridSpec& grid) const;
};

struct FitOptions {
  int sample_count = 2000;
  std::uint64_t seed = 0;
  double smoothing = 0.5;
};

// Fits one TabularDraftHead per offset from `sample_count` ancestral samples
// of `model`, with additive smoothing. Heads are returned in `offsets` order.
std::vector<std::shared_ptr<const TabularDraftHead>> fit_tabular_heads(
    const TargetModel& model, std::span<const int> offsets,
    const FitOptions& options);

// Horizontal offsets 1..H plus vertical offsets width..VSD*width.
std::vector<int> head_offsets(const GridSpec& grid, int horizontal_depth,
                              int vertical_depth);

// Picks heads by offset out of `heads`. Throws ValidationError when an
// offset required by (H, VSD) is missing.
DraftHeadSet assemble_head_set(
    const std::vector<std::shared_ptr<const TabularDraftHead>>& heads,
    const GridSpec& grid, int horizontal_depth, int vertical_depth);

// fit_tabular_heads over head_offsets(...) and assemble_head_set.
DraftHeadSet fit_tabular_draft_heads(const TargetModel& model,
                                     int horizontal_depth, int vertical_depth,
                                     const FitOptions& options);

// Heads that reproduce a prefix-independent target exactly. Throws
// ValidationError when the model depends on its prefix.
DraftHeadSet make_exact_heads(std::shared_ptr<const TargetModel> model,
                              int horizontal_depth, int vertical_depth);

// Mean negative log-likelihood (nats) of `head` on fresh ancestral samples.
double heldout_nll(const TargetModel& model, const DraftHead& head,
                   int sample_count, std::uint64_t seed);

}  // namespace hawk
