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

#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "hawk/cli/run_config.hpp"
#include "hawk/heads.hpp"
#include "hawk/models.hpp"

namespace hawk::cli {

inline constexpr std::string_view kArtifactVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitRuntime = 2,
  kExitAcceptanceFail = 3,
};

// Lower-case hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);

// Writes files under one output directory (created on demand) and records
// each file's digest for the run manifest.
class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }
  // Writes and records the digest.
  void write(const std::string& name, std::string_view bytes);
  // Writes without recording a digest (for non-reproducible files).
  void write_untracked(const std::string& name, std::string_view bytes);
  const std::map<std::string, std::string>& digests() const { return digests_; }
  // manifest.json: command, artifact version, master seed, config echo and
  // the digest of every tracked output.
  void write_manifest(std::string_view command, const RunConfig& config);

 private:
  std::filesystem::path root_;
  std::map<std::string, std::string> digests_;
};

std::shared_ptr<const TargetModel> build_model(const RunConfig& config);

// Heads for (H, VSD) according to config.heads.
DraftHeadSet build_heads(const RunConfig& config,
                         const std::shared_ptr<const TargetModel>& model,
                         int horizontal_depth, int vertical_depth);

// The engine block specialised to `mode` (MEDUSA and LANTERN drop vertical
// heads; HAWK requires VSD >= 1).
EngineConfig engine_for_mode(const EngineConfig& base, DecodeMode mode);

// Each subcommand writes into config.output_dir and returns an ExitCode.
// Validation failures throw ConfigError / ValidationError; run() maps them.
int cmd_decode(const RunConfig& config, std::ostream& log);
int cmd_verify(const RunConfig& config, std::ostream& log);
int cmd_bench(const RunConfig& config, std::ostream& log);
int cmd_fit(const RunConfig& config, std::ostream& log);

// Full command-line entry point: `hawk <decode|verify|bench|fit> --config
// <path> [--seed <u64>] [--out <dir>]`.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace hawk::cli
