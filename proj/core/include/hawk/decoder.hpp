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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hawk/candidate_tree.hpp"
#include "hawk/heads.hpp"
#include "hawk/metrics.hpp"
#include "hawk/models.hpp"
#include "hawk/random.hpp"
#include "hawk/speculation_cache.hpp"
#include "hawk/verifier.hpp"

namespace hawk {

enum class DecodeMode { kVanilla, kMedusa, kHawk, kLantern };

std::string_view mode_name(DecodeMode mode);
std::optional<DecodeMode> parse_mode(std::string_view name);

struct EngineConfig {
  DecodeMode mode = DecodeMode::kHawk;
  int horizontal_depth = 2;  // H
  int vertical_depth = 1;    // VSD; forced to 0 outside HAWK mode
  TreeShape tree;
  SamplingConfig target_sampling;
  // Apply target_sampling to head outputs as well.
  bool transform_drafts = true;
  int lantern_k = 10;
  double lantern_lambda = 2.0;
  double draft_overhead_ratio = 0.0;
  // Keep per-step trace rows and the KL trace.
  bool record_trace = false;

  int effective_vertical_depth() const;
  // Throws ValidationError naming the offending field.
  void validate() const;
};

struct TraceRow {
  int round = 0;
  int frontier_index = 0;
  int depth = 0;
  std::string source;  // H<d> / V<d>
  double alpha = 0.0;
  bool accepted = false;
  int committed_this_round = 0;
};

struct RoundResult {
  int frontier = 0;  // raster index of the first token committed
  std::vector<int> committed_tokens;
  std::vector<VerificationOutcome> outcomes;  // one per verified depth
  int tree_depth = 0;
  long long tree_paths = 0;
};

struct DecodeResult {
  std::vector<int> tokens;
  MetricsReport metrics;
  std::vector<TraceRow> trace;
  std::vector<KlPoint> kl_trace;
};

class DecodeSession;

// Immutable decoding setup shared by any number of sessions.
class Decoder {
 public:
  // `lantern_seed` seeds the token embedding used for LANTERN neighbourhoods.
  Decoder(std::shared_ptr<const TargetModel> model, DraftHeadSet heads,
          EngineConfig config, std::uint64_t lantern_seed = 0);

  const TargetModel& model() const { return *model_; }
  const GridSpec& grid() const { return model_->grid(); }
  const DraftHeadSet& heads() const { return heads_; }
  const EngineConfig& config() const { return config_; }
  const LanternRelaxation* lantern() const {
    return lantern_ ? &*lantern_ : nullptr;
  }

  // Runs rounds until the grid is complete. Deterministic in `seed`.
  DecodeResult decode_image(std::uint64_t seed) const;

 private:
  std::shared_ptr<const TargetModel> model_;
  DraftHeadSet heads_;
  EngineConfig config_;
  std::optional<LanternRelaxation> lantern_;
};

// Mutable state of one decode: committed tokens, the speculation cache and
// the random streams ("draft" for candidate sampling, "verify" for
// accept/reject and resampling).
class DecodeSession {
 public:
  DecodeSession(const Decoder& decoder, std::uint64_t seed);

  bool done() const;
  std::span<const int> committed() const { return committed_; }
  const SpeculationCache& cache() const { return cache_; }
  const MetricsReport& metrics() const { return metrics_; }
  const std::vector<TraceRow>& trace() const { return trace_; }
  const std::vector<KlPoint>& kl_trace() const { return kl_trace_; }
  int round() const { return round_; }

  // One target pass: draft, verify, commit. Throws StateError when done.
  RoundResult decode_round();

 private:
  TokenDistribution target_now() const;
  std::shared_ptr<const TokenDistribution> draft_now(const DraftHead& head) const;
  void commit(int token);

  const Decoder& decoder_;
  std::vector<int> committed_;
  SpeculationCache cache_;
  RandomStream draft_rng_;
  RandomStream verify_rng_;
  MetricsReport metrics_;
  std::vector<TraceRow> trace_;
  std::vector<KlPoint> kl_trace_;
  int round_ = 0;
};

inline RoundResult decode_round(DecodeSession& session) {
  return session.decode_round();
}

// Convenience wrapper around Decoder::decode_image.
DecodeResult decode_image(std::shared_ptr<const TargetModel> model,
                          const DraftHeadSet& heads, const EngineConfig& config,
                          std::uint64_t seed, std::uint64_t lantern_seed = 0);

// KL trace recorded by a HAWK session. Throws ValidationError for sessions
// that were not HAWK with VSD >= 1 and trace recording on.
std::vector<KlPoint> kl_trace(const DecodeResult& result,
                              const EngineConfig& config);

}  // namespace hawk
