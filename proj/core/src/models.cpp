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

#include "hawk/models.hpp"

#include <cmath>
#include <string>

#include "hawk/errors.hpp"

namespace hawk {

namespace {

// Peaked random row: u^4 concentrates mass on a few tokens, which is what
// makes speculation on the toy models non-trivial.
TokenDistribution random_row(int vocab_size, RandomStream& rng) {
  std::vector<double> weights(vocab_size);
  for (double& w : weights) w = std::pow(rng.uniform(), 4.0) + 1e-6;
  return normalize(weights).dist;
}

}  // namespace

TokenDistribution TargetModel::conditional(std::span<const int> prefix) const {
  const GridSpec& g = grid();
  if (static_cast<int>(prefix.size()) >= g.size()) {
    throw StateError("prefix of length " + std::to_string(prefix.size()) +
                     " leaves no position in a grid of " +
                     std::to_string(g.size()));
  }
  for (int token : prefix) {
    if (token < 0 || token >= g.vocab_size) {
      throw ValidationError("prefix token " + std::to_string(token) +
                            " outside vocabulary");
    }
  }
  return conditional_unchecked(prefix);
}

GridMarkovModel::GridMarkovModel(GridSpec grid, std::uint64_t seed,
                                 double vertical_weight,
                                 std::vector<TokenDistribution> tables)
    : grid_(grid),
      seed_(seed),
      vertical_weight_(vertical_weight),
      tables_(std::move(tables)) {
  grid_.validate();
  if (!(vertical_weight_ >= 0.0 && vertical_weight_ <= 1.0)) {
    throw ValidationError("vertical_weight must lie in [0, 1]");
  }
  const int contexts = (grid_.vocab_size + 1) * (grid_.vocab_size + 1);
  if (static_cast<int>(tables_.size()) != contexts) {
    throw ValidationError("grid markov model needs " +
                          std::to_string(contexts) + " table rows");
  }
  for (const auto& row : tables_) {
    if (row.size() != grid_.vocab_size) {
      throw ValidationError("table row length differs from vocab_size");
    }
  }
}

const TokenDistribution& GridMarkovModel::table(int left, int above) const {
  return tables_[left * (grid_.vocab_size + 1) + above];
}

bool GridMarkovModel::is_prefix_independent() const {
  for (const auto& row : tables_) {
    if (!(row == tables_.front())) return false;
  }
  return true;
}

TokenDistribution GridMarkovModel::conditional_unchecked(
    std::span<const int> prefix) const {
  const int idx = static_cast<int>(prefix.size());
  const int row = idx / grid_.width;
  const int col = idx % grid_.width;
  const int left = col > 0 ? prefix[idx - 1] : boundary();
  const int above = row > 0 ? prefix[idx - grid_.width] : boundary();
  return table(left, above);
}

std::shared_ptr<const GridMarkovModel> make_grid_markov_target(
    const GridSpec& grid, std::uint64_t seed, double vertical_weight) {
  grid.validate();
  if (!(vertical_weight >= 0.0 && vertical_weight <= 1.0)) {
    throw ValidationError("vertical_weight must lie in [0, 1]");
  }
  const int k = grid.vocab_size;
  RandomStream left_rng = RandomStream::derive(seed, "grid-markov/left");
  RandomStream above_rng = RandomStream::derive(seed, "grid-markov/above");
  std::vector<TokenDistribution> left_rows;
  std::vector<TokenDistribution> above_rows;
  for (int c = 0; c <= k; ++c) left_rows.push_back(random_row(k, left_rng));
  for (int c = 0; c <= k; ++c) above_rows.push_back(random_row(k, above_rng));

  std::vector<TokenDistribution> tables;
  tables.reserve((k + 1) * (k + 1));
  std::vector<double> mixed(k);
  for (int left = 0; left <= k; ++left) {
    for (int above = 0; above <= k; ++above) {
      for (int x = 0; x < k; ++x) {
        mixed[x] = vertical_weight * above_rows[above][x] +
                   (1.0 - vertical_weight) * left_rows[left][x];
      }
      tables.push_back(normalize(mixed).dist);
    }
  }
  return std::make_shared<const GridMarkovModel>(grid, seed, vertical_weight,
                                                 std::move(tables));
}

IndependentPositionModel::IndependentPositionModel(
    GridSpec grid, std::uint64_t seed,
    std::vector<TokenDistribution> per_position)
    : grid_(grid), seed_(seed), tables_(std::move(per_position)) {
  grid_.validate();
  if (static_cast<int>(tables_.size()) != grid_.size()) {
    throw ValidationError("independent model needs one row per position");
  }
  for (const auto& row : tables_) {
    if (row.size() != grid_.vocab_size) {
      throw ValidationError("table row length differs from vocab_size");
    }
  }
}

TokenDistribution IndependentPositionModel::conditional_unchecked(
    std::span<const int> prefix) const {
  return tables_[prefix.size()];
}

std::shared_ptr<const IndependentPositionModel> make_independent_target(
    const GridSpec& grid, std::uint64_t seed) {
  grid.validate();
  RandomStream rng = RandomStream::derive(seed, "independent/rows");
  std::vector<TokenDistribution> rows;
  rows.reserve(grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    rows.push_back(random_row(grid.vocab_size, rng));
  }
  return std::make_shared<const IndependentPositionModel>(grid, seed,
                                                          std::move(rows));
}

std::vector<int> sample_ancestral(const TargetModel& model, RandomStream& rng,
                                  const SamplingConfig& transform) {
  const int n = model.grid().size();
  std::vector<int> tokens;
  tokens.reserve(n);
  for (int i = 0; i < n; ++i) {
    tokens.push_back(
        rng.categorical(apply_sampling(model.conditional(tokens), transform)));
  }
  return tokens;
}

}  // namespace hawk
