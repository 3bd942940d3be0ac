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
#include <string>
#include <string_view>
#include <vector>

#include "hawk/heads.hpp"
#include "hawk/models.hpp"

namespace hawk {

// Version written into every model and head-set file.
inline constexpr int kModelFormatVersion = 1;

// JSON text with fixed field names: format, version, grid, seed, tables
// (plus vertical_weight for grid markov models). Doubles are written in
// shortest round-trip form, so save -> load -> save is byte-identical.
std::string serialize_model(const TargetModel& model);

// Throws ValidationError on malformed input or an unknown format/version.
std::shared_ptr<const TargetModel> parse_model(std::string_view text);

struct TabularHeadFile {
  GridSpec grid;
  std::uint64_t seed = 0;
  int sample_count = 0;
  double smoothing = 0.0;
  std::vector<std::shared_ptr<const TabularDraftHead>> heads;
};

std::string serialize_heads(const TabularHeadFile& file);
TabularHeadFile parse_heads(std::string_view text);

}  // namespace hawk
