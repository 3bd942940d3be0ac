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
#include <map>
#include <span>
#include <vector>

#include "hawk/distribution.hpp"
#include "hawk/grid.hpp"
#include "hawk/heads.hpp"
#include "hawk/metrics.hpp"
#include "hawk/models.hpp"

namespace hawk {

// Largest outcome space enumerate_joint will build.
inline constexpr long long kMaxJointOutcomes = 1'000'000;

// Probability (or frequency) of complete token grids.
struct JointTable {
  GridSpec grid;
  std::map<std::vector<int>, double> mass;
  // Number of samples behind an empirical table; 0 for exact tables.
  long long sample_count = 0;

  double total() const;
};

// Exact joint law of ancestral sampling from `model` with `transforms`
// applied to every conditional. Throws ValidationError when the outcome
// space exceeds kMaxJointOutcomes.
JointTable enumerate_joint(const TargetModel& model,
                           const SamplingConfig& transforms = {});

// Collects grids one at a time into frequency counts.
class JointAccumulator {
 public:
  explicit JointAccumulator(GridSpec grid) : grid_(grid) {}
  // Throws ValidationError on a grid of the wrong size.
  void add(std::span<const int> tokens);
  long long count() const { return count_; }
  JointTable table() const;

 private:
  GridSpec grid_;
  std::map<std::vector<int>, long long> counts_;
  long long count_ = 0;
};

// Frequency table of `samples`. Throws ValidationError when empty or when
// sample sizes disagree with `grid`.
JointTable empirical_joint(const GridSpec& grid,
                           std::span<const std::vector<int>> samples);

// Count-weighted average of two empirical tables over the same grid.
JointTable merge_empirical(const JointTable& a, const JointTable& b);

// 0.5 * sum |a - b| over the union of supports.
double joint_tv(const JointTable& a, const JointTable& b);

struct RejectionCurveOptions {
  int positions = 10'000;  // decode positions to average over
  int max_candidates = 4;  // m_max
  std::uint64_t seed = 0;
  SamplingConfig target_sampling;
  bool transform_drafts = true;
  bool keep_instances = false;
};

struct RejectionInstance {
  int position = 0;
  TokenDistribution target;
  std::vector<TokenDistribution> dual_chain;        // V, H, V, H, ...
  std::vector<TokenDistribution> horizontal_chain;  // H, H, H, ...
  std::vector<double> dual_mass;        // index m - 1
  std::vector<double> horizontal_mass;  // index m - 1
};

struct RejectionCurve {
  std::vector<RejectionCurvePoint> points;  // m = 1..max_candidates
  std::vector<RejectionInstance> instances;
  int positions = 0;
};

// Mean rejection mass for candidate chains of length m = 1..m_max at
// positions (row >= 1) of ancestral samples. Dual chains alternate the
// cached vertical distributions (depth 1, 2, ... cycling) with the depth-1
// horizontal prediction; horizontal-only chains repeat the horizontal one.
RejectionCurve rejection_curve(const TargetModel& model,
                               const DraftHeadSet& heads,
                               const RejectionCurveOptions& options);

}  // namespace hawk
