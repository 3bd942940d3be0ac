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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hawk/decoder.hpp"
#include "hawk/errors.hpp"
#include "hawk/grid.hpp"

namespace hawk::cli {

inline constexpr int kConfigSchemaVersion = 1;

// A config problem; field() is the dotted path of the offending key.
class ConfigError : public ValidationError {
 public:
  ConfigError(std::string field, const std::string& message)
      : ValidationError("config field '" + field + "': " + message),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct ModelSpec {
  std::string kind = "grid_markov";  // grid_markov | independent | file
  std::uint64_t seed = 1;
  double vertical_weight = 0.9;
  std::string path;  // kind == file
};

struct HeadSpec {
  std::string kind = "fitted";  // fitted | exact | file
  int sample_count = 2000;
  double smoothing = 0.5;
  std::vector<int> offsets;  // fit subcommand; empty means derive from H/VSD
  int heldout_samples = 200;
  std::string path;  // kind == file
};

struct OracleSpec {
  long long samples = 500'000;
  double tolerance_factor = 3.0;
};

struct BenchSpec {
  int images = 20;
  int curve_positions = 10'000;
  int curve_max_candidates = 4;
  std::vector<DecodeMode> modes = {DecodeMode::kVanilla, DecodeMode::kMedusa,
                                   DecodeMode::kHawk, DecodeMode::kLantern};
};

struct RunConfig {
  int schema_version = kConfigSchemaVersion;
  std::uint64_t seed = 0;  // master seed
  GridSpec grid{8, 8, 8};
  ModelSpec model;
  HeadSpec heads;
  EngineConfig engine;
  OracleSpec oracle;
  BenchSpec bench;
  std::string output_dir = "out";
};

// Parses and validates a JSON run config. Unknown keys, wrong types and
// out-of-range values raise ConfigError naming the field.
RunConfig parse_run_config(std::string_view text);

// Canonical JSON echo of a config (stable key order).
std::string run_config_to_json(const RunConfig& config);

// Semantic checks shared by the parser and the subcommands.
void validate_run_config(const RunConfig& config);

}  // namespace hawk::cli
