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
#include "hawk/random.hpp"

namespace hawk {

// An autoregressive model over a raster-ordered grid: given the committed
// prefix x_0..x_{t-1}, returns p(x_t | x_<t). Implementations are immutable
// and deterministic.
class TargetModel {
 public:
  virtual ~TargetModel() = default;

  virtual const GridSpec& grid() const = 0;

  // Conditional for raster position prefix.size(). Throws StateError when
  // the grid is already complete and ValidationError on out-of-vocab tokens.
  TokenDistribution conditional(std::span<const int> prefix) const;

  // True when the conditional at each position ignores the prefix contents.
  virtual bool is_prefix_independent() const = 0;

 protected:
  virtual TokenDistribution conditional_unchecked(
      std::span<const int> prefix) const = 0;
};

// Free-function form of TargetModel::conditional.
inline TokenDistribution target_conditional(const TargetModel& model,
                                            std::span<const int> prefix) {
  return model.conditional(prefix);
}

// Toy image model: token (r, c) depends on its left neighbour and the
// neighbour above, each replaced by a BOUNDARY context (index vocab_size) at
// row starts and on the first row. The table for (left, above) is
//
//   vertical_weight * above_table[above] + (1 - vertical_weight) * left_table[left]
//
// so weight 1 ignores the left neighbour and weight 0 ignores the row above.
class GridMarkovModel final : public TargetModel {
 public:
  // `tables` is indexed [left * (K + 1) + above], K = vocab size.
  GridMarkovModel(GridSpec grid, std::uint64_t seed, double vertical_weight,
                  std::vector<TokenDistribution> tables);

  const GridSpec& grid() const override { return grid_; }
  bool is_prefix_independent() const override;

  std::uint64_t seed() const { return seed_; }
  double vertical_weight() const { return vertical_weight_; }
  int boundary() const { return grid_.vocab_size; }
  const TokenDistribution& table(int left, int above) const;
  const std::vector<TokenDistribution>& tables() const { return tables_; }

 protected:
  TokenDistribution conditional_unchecked(
      std::span<const int> prefix) const override;

 private:
  GridSpec grid_;
  std::uint64_t seed_;
  double vertical_weight_;
  std::vector<TokenDistribution> tables_;
};

// Builds a GridMarkovModel whose component tables are drawn from streams
// derived from `seed`. Throws ValidationError unless 0 <= weight <= 1.
std::shared_ptr<const GridMarkovModel> make_grid_markov_target(
    const GridSpec& grid, std::uint64_t seed, double vertical_weight);

// Each raster position has its own fixed distribution; the prefix is ignored.
class IndependentPositionModel final : public TargetModel {
 public:
  IndependentPositionModel(GridSpec grid, std::uint64_t seed,
                           std::vector<TokenDistribution> per_position);

  const GridSpec& grid() const override { return grid_; }
  bool is_prefix_independent() const override { return true; }

  std::uint64_t seed() const { return seed_; }
  const std::vector<TokenDistribution>& tables() const { return tables_; }

 protected:
  TokenDistribution conditional_unchecked(
      std::span<const int> prefix) const override;

 private:
  GridSpec grid_;
  std::uint64_t seed_;
  std::vector<TokenDistribution> tables_;
};

std::shared_ptr<const IndependentPositionModel> make_independent_target(
    const GridSpec& grid, std::uint64_t seed);

// One full grid drawn by ancestral sampling from `model`, with the optional
// sampling transform applied to every conditional.
std::vector<int> sample_ancestral(const TargetModel& model, RandomStream& rng,
                                  const SamplingConfig& transform = {});

}  // namespace hawk
