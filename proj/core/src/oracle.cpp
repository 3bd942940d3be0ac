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

#include "hawk/oracle.hpp"

#include <cmath>
#include <string>

#include "hawk/errors.hpp"
#include "hawk/random.hpp"
#include "hawk/verifier.hpp"

namespace hawk {

double JointTable::total() const {
  double sum = 0.0;
  for (const auto& [grid_tokens, p] : mass) sum += p;
  return sum;
}

namespace {

void enumerate(const TargetModel& model, const SamplingConfig& transforms,
               std::vector<int>& prefix, double prob, JointTable& out) {
  if (static_cast<int>(prefix.size()) == model.grid().size()) {
    out.mass.emplace(prefix, prob);
    return;
  }
  const TokenDistribution p =
      apply_sampling(model.conditional(prefix), transforms);
  for (int x = 0; x < p.size(); ++x) {
    if (p[x] == 0.0) continue;
    prefix.push_back(x);
    enumerate(model, transforms, prefix, prob * p[x], out);
    prefix.pop_back();
  }
}

}  // namespace

JointTable enumerate_joint(const TargetModel& model,
                           const SamplingConfig& transforms) {
  const GridSpec& grid = model.grid();
  long long outcomes = 1;
  for (int i = 0; i < grid.size(); ++i) {
    outcomes *= grid.vocab_size;
    if (outcomes > kMaxJointOutcomes) {
      throw ValidationError(
          "joint enumeration needs vocab_size^(width*height) <= " +
          std::to_string(kMaxJointOutcomes) + "; use a smaller grid");
    }
  }
  JointTable table;
  table.grid = grid;
  std::vector<int> prefix;
  prefix.reserve(grid.size());
  enumerate(model, transforms, prefix, 1.0, table);
  return table;
}

void JointAccumulator::add(std::span<const int> tokens) {
  if (static_cast<int>(tokens.size()) != grid_.size()) {
    throw ValidationError("sample has " + std::to_string(tokens.size()) +
                          " tokens, grid has " + std::to_string(grid_.size()));
  }
  ++counts_[std::vector<int>(tokens.begin(), tokens.end())];
  ++count_;
}

JointTable JointAccumulator::table() const {
  JointTable table;
  table.grid = grid_;
  table.sample_count = count_;
  for (const auto& [tokens, n] : counts_) {
    table.mass.emplace(tokens, static_cast<double>(n) / count_);
  }
  return table;
}

JointTable empirical_joint(const GridSpec& grid,
                           std::span<const std::vector<int>> samples) {
  if (samples.empty()) throw ValidationError("no samples");
  JointAccumulator acc(grid);
  for (const auto& s : samples) acc.add(s);
  return acc.table();
}

JointTable merge_empirical(const JointTable& a, const JointTable& b) {
  if (!(a.grid == b.grid)) throw ValidationError("grid mismatch");
  if (a.sample_count < 1 || b.sample_count < 1) {
    throw ValidationError("merge needs two empirical tables");
  }
  JointTable out;
  out.grid = a.grid;
  out.sample_count = a.sample_count + b.sample_count;
  const double wa = static_cast<double>(a.sample_count) / out.sample_count;
  const double wb = static_cast<double>(b.sample_count) / out.sample_count;
  for (const auto& [tokens, p] : a.mass) out.mass[tokens] += wa * p;
  for (const auto& [tokens, p] : b.mass) out.mass[tokens] += wb * p;
  return out;
}

double joint_tv(const JointTable& a, const JointTable& b) {
  if (!(a.grid == b.grid)) throw ValidationError("grid mismatch");
  double sum = 0.0;
  for (const auto& [tokens, p] : a.mass) {
    auto it = b.mass.find(tokens);
    sum += std::abs(p - (it == b.mass.end() ? 0.0 : it->second));
  }
  for (const auto& [tokens, p] : b.mass) {
    if (!a.mass.contains(tokens)) sum += p;
  }
  return std::min(1.0, 0.5 * sum);
}

RejectionCurve rejection_curve(const TargetModel& model,
                               const DraftHeadSet& heads,
                               const RejectionCurveOptions& options) {
  if (options.max_candidates < 1) {
    throw ValidationError("rejection curve needs m_max >= 1");
  }
  if (options.positions < 1) {
    throw ValidationError("rejection curve needs positions >= 1");
  }
  const GridSpec& grid = model.grid();
  heads.validate(grid);
  if (heads.vertical_depth() < 1) {
    throw ValidationError("rejection curve needs at least one vertical head");
  }
  if (grid.height < 2) {
    throw ValidationError("rejection curve needs a grid with >= 2 rows");
  }
  const int m_max = options.max_candidates;
  auto draft = [&](const DraftHead& head, std::span<const int> prefix) {
    TokenDistribution q = head.predict(prefix);
    if (options.transform_drafts) q = apply_sampling(q, options.target_sampling);
    return q;
  };

  RejectionCurve curve;
  std::vector<double> dual_sum(m_max, 0.0);
  std::vector<double> horizontal_sum(m_max, 0.0);
  RandomStream rng = RandomStream::derive(options.seed, "rejection-curve");
  int counted = 0;
  while (counted < options.positions) {
    const std::vector<int> tokens =
        sample_ancestral(model, rng, options.target_sampling);
    for (int t = grid.width; t < grid.size() && counted < options.positions;
         ++t) {
      const std::span<const int> prefix(tokens.data(), t);
      const TokenDistribution p =
          apply_sampling(model.conditional(prefix), options.target_sampling);
      const TokenDistribution horizontal = draft(*heads.horizontal[0], prefix);
      std::vector<TokenDistribution> vertical;
      for (int d = 1; d <= heads.vertical_depth(); ++d) {
        const int source = t - d * grid.width;
        if (source < 0) break;
        vertical.push_back(draft(*heads.vertical[d - 1],
                                 std::span<const int>(tokens.data(), source + 1)));
      }
      std::vector<TokenDistribution> dual_chain;
      std::vector<TokenDistribution> horizontal_chain;
      for (int i = 0; i < m_max; ++i) {
        dual_chain.push_back(i % 2 == 0 ? vertical[(i / 2) % vertical.size()]
                                        : horizontal);
        horizontal_chain.push_back(horizontal);
      }
      RejectionInstance instance{t, p, dual_chain, horizontal_chain, {}, {}};
      for (int m = 1; m <= m_max; ++m) {
        const double dual = rejection_mass(
            p, std::span<const TokenDistribution>(dual_chain.data(), m));
        const double horiz = rejection_mass(
            p, std::span<const TokenDistribution>(horizontal_chain.data(), m));
        dual_sum[m - 1] += dual;
        horizontal_sum[m - 1] += horiz;
        instance.dual_mass.push_back(dual);
        instance.horizontal_mass.push_back(horiz);
      }
      if (options.keep_instances) curve.instances.push_back(std::move(instance));
      ++counted;
    }
  }
  curve.positions = counted;
  for (int m = 1; m <= m_max; ++m) {
    curve.points.push_back(RejectionCurvePoint{
        m, dual_sum[m - 1] / counted, horizontal_sum[m - 1] / counted});
  }
  return curve;
}

}  // namespace hawk
