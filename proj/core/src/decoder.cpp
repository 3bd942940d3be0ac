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

#include "hawk/decoder.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "hawk/errors.hpp"

namespace hawk {

std::string_view mode_name(DecodeMode mode) {
  switch (mode) {
    case DecodeMode::kVanilla:
      return "vanilla";
    case DecodeMode::kMedusa:
      return "medusa";
    case DecodeMode::kHawk:
      return "hawk";
    case DecodeMode::kLantern:
      return "lantern";
  }
  return "unknown";
}

std::optional<DecodeMode> parse_mode(std::string_view name) {
  for (DecodeMode mode : {DecodeMode::kVanilla, DecodeMode::kMedusa,
                          DecodeMode::kHawk, DecodeMode::kLantern}) {
    if (mode_name(mode) == name) return mode;
  }
  return std::nullopt;
}

int EngineConfig::effective_vertical_depth() const {
  return mode == DecodeMode::kHawk ? vertical_depth : 0;
}

void EngineConfig::validate() const {
  if (horizontal_depth < 1) {
    throw ValidationError("engine.horizontal_depth must be >= 1");
  }
  if (vertical_depth < 0) {
    throw ValidationError("engine.vertical_depth must be >= 0");
  }
  if (mode == DecodeMode::kHawk && vertical_depth < 1) {
    throw ValidationError("engine.vertical_depth must be >= 1 in hawk mode");
  }
  if (tree.samples_horizontal < 0) {
    throw ValidationError("engine.samples_horizontal must be >= 0");
  }
  if (tree.samples_vertical < 0) {
    throw ValidationError("engine.samples_vertical must be >= 0");
  }
  if (mode != DecodeMode::kVanilla && tree.samples_horizontal < 1 &&
      (mode != DecodeMode::kHawk || tree.samples_vertical < 1)) {
    throw ValidationError("engine.samples_horizontal: no candidates to draft");
  }
  if (tree.node_budget < 1) {
    throw ValidationError("engine.node_budget must be >= 1");
  }
  if (target_sampling.top_k && *target_sampling.top_k < 1) {
    throw ValidationError("engine.top_k must be >= 1");
  }
  if (!(target_sampling.temperature > 0.0) ||
      !std::isfinite(target_sampling.temperature)) {
    throw ValidationError("engine.temperature must be > 0");
  }
  if (lantern_k < 1) throw ValidationError("engine.lantern_k must be >= 1");
  if (!(lantern_lambda >= 1.0)) {
    throw ValidationError("engine.lantern_lambda must be >= 1");
  }
  if (!(draft_overhead_ratio >= 0.0)) {
    throw ValidationError("engine.draft_overhead_ratio must be >= 0");
  }
}

Decoder::Decoder(std::shared_ptr<const TargetModel> model, DraftHeadSet heads,
                 EngineConfig config, std::uint64_t lantern_seed)
    : model_(std::move(model)),
      heads_(std::move(heads)),
      config_(std::move(config)) {
  if (!model_) throw ValidationError("decoder needs a target model");
  config_.validate();
  if (config_.mode != DecodeMode::kVanilla) {
    heads_.validate(model_->grid());
    if (heads_.horizontal_depth() < config_.horizontal_depth) {
      throw ValidationError("engine.horizontal_depth exceeds available heads");
    }
    if (heads_.vertical_depth() < config_.effective_vertical_depth()) {
      throw ValidationError("engine.vertical_depth exceeds available heads");
    }
  }
  if (config_.mode == DecodeMode::kLantern) {
    lantern_ = make_lantern_relaxation(model_->grid().vocab_size,
                                       config_.lantern_k,
                                       config_.lantern_lambda, lantern_seed);
  }
}

DecodeResult Decoder::decode_image(std::uint64_t seed) const {
  const auto start = std::chrono::steady_clock::now();
  DecodeSession session(*this, seed);
  while (!session.done()) session.decode_round();
  DecodeResult result;
  result.tokens.assign(session.committed().begin(), session.committed().end());
  result.metrics = session.metrics();
  result.trace = session.trace();
  result.kl_trace = session.kl_trace();
  result.metrics.wall_clock_ms =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

DecodeSession::DecodeSession(const Decoder& decoder, std::uint64_t seed)
    : decoder_(decoder),
      cache_(decoder.grid(), decoder.config().effective_vertical_depth()),
      draft_rng_(RandomStream::derive(seed, "draft")),
      verify_rng_(RandomStream::derive(seed, "verify")) {
  committed_.reserve(decoder.grid().size());
  metrics_.mode = std::string(mode_name(decoder.config().mode));
  metrics_.draft_overhead_ratio = decoder.config().draft_overhead_ratio;
  if (decoder.config().mode != DecodeMode::kVanilla) {
    metrics_.depth.resize(decoder.config().horizontal_depth);
  }
}

bool DecodeSession::done() const {
  return static_cast<int>(committed_.size()) >= decoder_.grid().size();
}

TokenDistribution DecodeSession::target_now() const {
  return apply_sampling(decoder_.model().conditional(committed_),
                        decoder_.config().target_sampling);
}

std::shared_ptr<const TokenDistribution> DecodeSession::draft_now(
    const DraftHead& head) const {
  TokenDistribution q = head.predict(committed_);
  if (decoder_.config().transform_drafts) {
    q = apply_sampling(q, decoder_.config().target_sampling);
  }
  return std::make_shared<const TokenDistribution>(std::move(q));
}

void DecodeSession::commit(int token) {
  committed_.push_back(token);
  if (cache_.vertical_depth() > 0) {
    const EngineConfig& config = decoder_.config();
    cache_insert_on_commit(
        cache_, decoder_.heads(), committed_, decoder_.grid(),
        config.transform_drafts ? &config.target_sampling : nullptr);
  }
}

RoundResult DecodeSession::decode_round() {
  if (done()) throw StateError("decode already complete");
  const EngineConfig& config = decoder_.config();
  const GridSpec& grid = decoder_.grid();
  const int frontier = static_cast<int>(committed_.size());
  ++round_;
  ++metrics_.rounds;
  ++metrics_.target_passes;

  RoundResult result;
  result.frontier = frontier;

  if (config.mode == DecodeMode::kVanilla) {
    const int token = verify_rng_.categorical(target_now());
    commit(token);
    result.committed_tokens.push_back(token);
    ++metrics_.committed;
    return result;
  }

  // Drafting: every head sees only the committed prefix.
  std::vector<SamplingPool> pools;
  const SpeculationCache* cache = cache_.vertical_depth() > 0 ? &cache_ : nullptr;
  for (int n = 1; n <= config.horizontal_depth; ++n) {
    if (frontier + n - 1 >= grid.size()) break;
    auto pool = build_pool(cache, grid, frontier, n,
                           draft_now(*decoder_.heads().horizontal[n - 1]));
    pools.push_back(std::move(*pool));
  }
  if (config.record_trace && cache && !pools.front().vertical.empty() &&
      pools.front().vertical.front().depth == 1) {
    kl_trace_.push_back(
        KlPoint{frontier, kl_divergence(*pools.front().vertical.front().dist,
                                        *pools.front().horizontal)});
  }
  const CandidateTree tree = build_candidate_tree(pools, config.tree, draft_rng_);
  result.tree_depth = tree.depth();
  result.tree_paths = tree.path_count();

  // Verification, depth by depth along the accepted path. Accepted tokens are
  // final, so they are committed (and cached) as soon as they are accepted.
  std::vector<int> path;
  bool round_ended = false;
  for (int layer = 0; layer < tree.depth(); ++layer) {
    const int children = tree.child_count(path);
    const TokenDistribution p = target_now();
    if (children == 0) {
      // Pruned subtree: the target pass still yields this position's token.
      const int token = verify_rng_.categorical(p);
      commit(token);
      result.committed_tokens.push_back(token);
      round_ended = true;
      break;
    }
    const std::span<const Candidate> candidates(tree.layer(layer).data(),
                                                children);
    VerificationOutcome outcome =
        sequential_verify(p, candidates, verify_rng_, decoder_.lantern());
    DepthStats& stats = metrics_.depth[layer];
    ++stats.attempts;
    commit(outcome.emitted_token);
    result.committed_tokens.push_back(outcome.emitted_token);
    const bool accepted = outcome.emitted_via == EmitVia::kAccept;
    if (accepted) {
      ++stats.accepts;
      path.push_back(outcome.accepted_index);
    }
    result.outcomes.push_back(std::move(outcome));
    if (!accepted) {
      round_ended = true;
      break;
    }
  }
  if (!round_ended && !done()) {
    const int token = verify_rng_.categorical(target_now());
    commit(token);
    result.committed_tokens.push_back(token);
  }

  const int committed_now = static_cast<int>(result.committed_tokens.size());
  metrics_.committed += committed_now;
  if (config.record_trace) {
    for (std::size_t d = 0; d < result.outcomes.size(); ++d) {
      for (const VerifyStepRecord& step : result.outcomes[d].steps) {
        trace_.push_back(TraceRow{round_, frontier, static_cast<int>(d) + 1,
                                  source_tag(step.source, step.head_depth),
                                  step.alpha, step.accepted, committed_now});
      }
    }
  }
  return result;
}

DecodeResult decode_image(std::shared_ptr<const TargetModel> model,
                          const DraftHeadSet& heads, const EngineConfig& config,
                          std::uint64_t seed, std::uint64_t lantern_seed) {
  return Decoder(std::move(model), heads, config, lantern_seed)
      .decode_image(seed);
}

std::vector<KlPoint> kl_trace(const DecodeResult& result,
                              const EngineConfig& config) {
  if (config.mode != DecodeMode::kHawk || config.vertical_depth < 1 ||
      !config.record_trace) {
    throw ValidationError(
        "kl trace needs a hawk session with vertical heads and tracing on");
  }
  return result.kl_trace;
}

}  // namespace hawk
