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

#include "hawk/heads.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "hawk/errors.hpp"

namespace hawk {

DraftHead::DraftHead(int offset) : offset_(offset) {
  if (offset_ < 1) throw ValidationError("draft head offset must be >= 1");
}

TabularDraftHead::TabularDraftHead(GridSpec grid, int offset,
                                   std::vector<TokenDistribution> tables)
    : DraftHead(offset), grid_(grid), tables_(std::move(tables)) {
  grid_.validate();
  if (static_cast<int>(tables_.size()) != context_count(grid_)) {
    throw ValidationError("tabular head expects " +
                          std::to_string(context_count(grid_)) + " rows");
  }
  for (const auto& row : tables_) {
    if (row.size() != grid_.vocab_size) {
      throw ValidationError("head row length differs from vocab_size");
    }
  }
}

int TabularDraftHead::context_count(const GridSpec& grid) {
  const int k = grid.vocab_size + 1;
  return k * k * (grid.width + 1);
}

int TabularDraftHead::context_id(std::span<const int> prefix,
                                 const GridSpec& grid) {
  const int n = static_cast<int>(prefix.size());
  const int none = grid.vocab_size;
  const int second_last = n >= 2 ? prefix[n - 2] : none;
  const int last = n >= 1 ? prefix[n - 1] : none;
  const int column = n >= 1 ? (n - 1) % grid.width : grid.width;
  return (second_last * (grid.vocab_size + 1) + last) * (grid.width + 1) +
         column;
}

TokenDistribution TabularDraftHead::predict(std::span<const int> prefix) const {
  return tables_[context_id(prefix, grid_)];
}

ExactDraftHead::ExactDraftHead(std::shared_ptr<const TargetModel> model,
                               int offset)
    : DraftHead(offset), model_(std::move(model)) {
  if (!model_) throw ValidationError("exact head needs a model");
  if (!model_->is_prefix_independent()) {
    throw ValidationError(
        "exact heads require a target whose conditionals ignore the prefix");
  }
}

TokenDistribution ExactDraftHead::predict(std::span<const int> prefix) const {
  const int position = static_cast<int>(prefix.size()) - 1 + offset();
  if (position >= model_->grid().size()) {
    throw BoundsError("exact head asked for position " +
                      std::to_string(position) + " past the grid end");
  }
  // Any prefix of the right length gives the same conditional.
  std::vector<int> padded(prefix.begin(), prefix.end());
  padded.resize(position, 0);
  return model_->conditional(padded);
}

void DraftHeadSet::validate(const GridSpec& grid) const {
  if (horizontal.empty()) {
    throw ValidationError("draft head set needs at least one horizontal head");
  }
  for (int d = 0; d < horizontal_depth(); ++d) {
    if (!horizontal[d] || horizontal[d]->offset() != d + 1) {
      throw ValidationError("horizontal head " + std::to_string(d + 1) +
                            " has the wrong offset");
    }
  }
  for (int v = 0; v < vertical_depth(); ++v) {
    if (!vertical[v] || vertical[v]->offset() != (v + 1) * grid.width) {
      throw ValidationError("vertical head " + std::to_string(v + 1) +
                            " has the wrong offset");
    }
  }
}

std::vector<std::shared_ptr<const TabularDraftHead>> fit_tabular_heads(
    const TargetModel& model, std::span<const int> offsets,
    const FitOptions& options) {
  if (options.sample_count < 1) {
    throw ValidationError("sample_count must be >= 1");
  }
  if (!(options.smoothing >= 0.0) || !std::isfinite(options.smoothing)) {
    throw ValidationError("smoothing must be a finite value >= 0");
  }
  if (offsets.empty()) throw ValidationError("no head offsets given");
  for (int offset : offsets) {
    if (offset < 1) throw ValidationError("head offsets must be >= 1");
  }

  const GridSpec& grid = model.grid();
  const int n = grid.size();
  const int k = grid.vocab_size;
  const int contexts = TabularDraftHead::context_count(grid);
  std::vector<std::vector<double>> counts(
      offsets.size(), std::vector<double>(static_cast<std::size_t>(contexts) * k, 0.0));

  RandomStream rng = RandomStream::derive(options.seed, "fit-heads");
  for (int s = 0; s < options.sample_count; ++s) {
    const std::vector<int> tokens = sample_ancestral(model, rng);
    // `last` is the index of the last committed token; -1 is the empty prefix.
    for (int last = -1; last < n - 1; ++last) {
      const std::span<const int> prefix(tokens.data(), last + 1);
      const int ctx = TabularDraftHead::context_id(prefix, grid);
      for (std::size_t h = 0; h < offsets.size(); ++h) {
        const int target = last + offsets[h];
        if (target >= n) continue;
        counts[h][static_cast<std::size_t>(ctx) * k + tokens[target]] += 1.0;
      }
    }
  }

  std::vector<std::shared_ptr<const TabularDraftHead>> heads;
  heads.reserve(offsets.size());
  std::vector<double> row(k);
  for (std::size_t h = 0; h < offsets.size(); ++h) {
    std::vector<TokenDistribution> tables;
    tables.reserve(contexts);
    for (int ctx = 0; ctx < contexts; ++ctx) {
      for (int x = 0; x < k; ++x) {
        row[x] = counts[h][static_cast<std::size_t>(ctx) * k + x] +
                 options.smoothing;
      }
      // Unseen contexts with zero smoothing fall back to uniform.
      tables.push_back(normalize(row).dist);
    }
    heads.push_back(std::make_shared<const TabularDraftHead>(
        grid, offsets[h], std::move(tables)));
  }
  return heads;
}

std::vector<int> head_offsets(const GridSpec& grid, int horizontal_depth,
                              int vertical_depth) {
  if (horizontal_depth < 1) {
    throw ValidationError("horizontal_depth must be >= 1");
  }
  if (vertical_depth < 0) throw ValidationError("vertical_depth must be >= 0");
  std::vector<int> offsets;
  for (int d = 1; d <= horizontal_depth; ++d) offsets.push_back(d);
  for (int v = 1; v <= vertical_depth; ++v) {
    const int offset = v * grid.width;
    if (std::find(offsets.begin(), offsets.end(), offset) == offsets.end()) {
      offsets.push_back(offset);
    }
  }
  return offsets;
}

DraftHeadSet assemble_head_set(
    const std::vector<std::shared_ptr<const TabularDraftHead>>& heads,
    const GridSpec& grid, int horizontal_depth, int vertical_depth) {
  std::map<int, std::shared_ptr<const DraftHead>> by_offset;
  for (const auto& head : heads) by_offset.emplace(head->offset(), head);
  auto pick = [&](int offset) {
    auto it = by_offset.find(offset);
    if (it == by_offset.end()) {
      throw ValidationError("no head fitted for offset " +
                            std::to_string(offset));
    }
    return it->second;
  };
  DraftHeadSet set;
  for (int d = 1; d <= horizontal_depth; ++d) set.horizontal.push_back(pick(d));
  for (int v = 1; v <= vertical_depth; ++v) {
    set.vertical.push_back(pick(v * grid.width));
  }
  set.validate(grid);
  return set;
}

DraftHeadSet fit_tabular_draft_heads(const TargetModel& model,
                                     int horizontal_depth, int vertical_depth,
                                     const FitOptions& options) {
  const auto offsets =
      head_offsets(model.grid(), horizontal_depth, vertical_depth);
  return assemble_head_set(fit_tabular_heads(model, offsets, options),
                           model.grid(), horizontal_depth, vertical_depth);
}

DraftHeadSet make_exact_heads(std::shared_ptr<const TargetModel> model,
                              int horizontal_depth, int vertical_depth) {
  if (!model) throw ValidationError("exact heads need a model");
  const GridSpec grid = model->grid();
  if (horizontal_depth < 1) {
    throw ValidationError("horizontal_depth must be >= 1");
  }
  if (vertical_depth < 0) throw ValidationError("vertical_depth must be >= 0");
  DraftHeadSet set;
  for (int d = 1; d <= horizontal_depth; ++d) {
    set.horizontal.push_back(std::make_shared<const ExactDraftHead>(model, d));
  }
  for (int v = 1; v <= vertical_depth; ++v) {
    set.vertical.push_back(
        std::make_shared<const ExactDraftHead>(model, v * grid.width));
  }
  return set;
}

double heldout_nll(const TargetModel& model, const DraftHead& head,
                   int sample_count, std::uint64_t seed) {
  if (sample_count < 1) throw ValidationError("sample_count must be >= 1");
  const int n = model.grid().size();
  RandomStream rng = RandomStream::derive(seed, "heldout-nll");
  double total = 0.0;
  long long terms = 0;
  for (int s = 0; s < sample_count; ++s) {
    const std::vector<int> tokens = sample_ancestral(model, rng);
    for (int last = -1; last + head.offset() < n; ++last) {
      const std::span<const int> prefix(tokens.data(), last + 1);
      const double q = head.predict(prefix)[tokens[last + head.offset()]];
      total += q > 0.0 ? -std::log(q) : std::numeric_limits<double>::infinity();
      ++terms;
    }
  }
  return terms > 0 ? total / static_cast<double>(terms) : 0.0;
}

}  // namespace hawk
