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

#include "hawk/cli/run_config.hpp"

#include <set>

#include <nlohmann/json.hpp>

namespace hawk::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Reads keys of one JSON object and rejects anything it was not asked for.
class ObjectReader {
 public:
  ObjectReader(const json& object, std::string path)
      : object_(object), path_(std::move(path)) {
    if (!object_.is_object()) throw ConfigError(path_, "expected an object");
  }

  std::string field(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  const json* find(std::string_view key) {
    seen_.emplace(key);
    auto it = object_.find(std::string(key));
    return it == object_.end() ? nullptr : &*it;
  }

  template <typename T>
  void read(std::string_view key, T& out) {
    if (const json* value = find(key)) {
      try {
        out = value->get<T>();
      } catch (const json::exception&) {
        throw ConfigError(field(key), "has the wrong type");
      }
    }
  }

  ObjectReader child(std::string_view key) {
    static const json kEmpty = json::object();
    const json* value = find(key);
    return ObjectReader(value ? *value : kEmpty, field(key));
  }

  void finish() const {
    for (const auto& [key, value] : object_.items()) {
      if (!seen_.contains(key)) throw ConfigError(field(key), "unknown key");
    }
  }

 private:
  const json& object_;
  std::string path_;
  std::set<std::string, std::less<>> seen_;
};

DecodeMode mode_from(const std::string& name, const std::string& field) {
  auto mode = parse_mode(name);
  if (!mode) {
    throw ConfigError(field, "unknown mode '" + name +
                                 "' (vanilla, medusa, hawk, lantern)");
  }
  return *mode;
}

}  // namespace

RunConfig parse_run_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
  }
  RunConfig config;
  ObjectReader top(root, "");
  top.read("schema_version", config.schema_version);
  if (!top.find("schema_version")) {
    throw ConfigError("schema_version", "is required");
  }
  if (config.schema_version != kConfigSchemaVersion) {
    throw ConfigError("schema_version",
                      "unsupported version " +
                          std::to_string(config.schema_version));
  }
  top.read("seed", config.seed);
  top.read("output_dir", config.output_dir);

  {
    ObjectReader grid = top.child("grid");
    grid.read("width", config.grid.width);
    grid.read("height", config.grid.height);
    grid.read("vocab_size", config.grid.vocab_size);
    grid.finish();
  }
  {
    ObjectReader model = top.child("model");
    model.read("kind", config.model.kind);
    model.read("seed", config.model.seed);
    model.read("vertical_weight", config.model.vertical_weight);
    model.read("path", config.model.path);
    model.finish();
  }
  {
    ObjectReader heads = top.child("heads");
    heads.read("kind", config.heads.kind);
    heads.read("sample_count", config.heads.sample_count);
    heads.read("smoothing", config.heads.smoothing);
    heads.read("offsets", config.heads.offsets);
    heads.read("heldout_samples", config.heads.heldout_samples);
    heads.read("path", config.heads.path);
    heads.finish();
  }
  {
    ObjectReader engine = top.child("engine");
    EngineConfig& e = config.engine;
    std::string mode(mode_name(e.mode));
    engine.read("mode", mode);
    e.mode = mode_from(mode, engine.field("mode"));
    engine.read("horizontal_depth", e.horizontal_depth);
    engine.read("vertical_depth", e.vertical_depth);
    engine.read("samples_horizontal", e.tree.samples_horizontal);
    engine.read("samples_vertical", e.tree.samples_vertical);
    engine.read("node_budget", e.tree.node_budget);
    std::string order = "vertical_first";
    engine.read("verify_order", order);
    if (order == "vertical_first") {
      e.tree.order = VerifyOrder::kVerticalFirst;
    } else if (order == "horizontal_first") {
      e.tree.order = VerifyOrder::kHorizontalFirst;
    } else {
      throw ConfigError(engine.field("verify_order"),
                        "expected vertical_first or horizontal_first");
    }
    if (const json* top_k = engine.find("top_k")) {
      if (top_k->is_string() && top_k->get<std::string>() == "all") {
        e.target_sampling.top_k.reset();
      } else if (top_k->is_number_integer()) {
        e.target_sampling.top_k = top_k->get<int>();
      } else {
        throw ConfigError(engine.field("top_k"),
                          "expected a positive integer or \"all\"");
      }
    }
    engine.read("temperature", e.target_sampling.temperature);
    engine.read("transform_drafts", e.transform_drafts);
    engine.read("lantern_k", e.lantern_k);
    engine.read("lantern_lambda", e.lantern_lambda);
    engine.read("draft_overhead_ratio", e.draft_overhead_ratio);
    engine.read("record_trace", e.record_trace);
    engine.finish();
  }
  {
    ObjectReader oracle = top.child("oracle");
    oracle.read("samples", config.oracle.samples);
    oracle.read("tolerance_factor", config.oracle.tolerance_factor);
    oracle.finish();
  }
  {
    ObjectReader bench = top.child("bench");
    bench.read("images", config.bench.images);
    bench.read("curve_positions", config.bench.curve_positions);
    bench.read("curve_max_candidates", config.bench.curve_max_candidates);
    if (const json* modes = bench.find("modes")) {
      if (!modes->is_array()) {
        throw ConfigError(bench.field("modes"), "expected an array");
      }
      config.bench.modes.clear();
      for (const auto& m : *modes) {
        if (!m.is_string()) {
          throw ConfigError(bench.field("modes"), "expected mode names");
        }
        config.bench.modes.push_back(
            mode_from(m.get<std::string>(), bench.field("modes")));
      }
    }
    bench.finish();
  }
  top.finish();
  validate_run_config(config);
  return config;
}

void validate_run_config(const RunConfig& config) {
  try {
    config.grid.validate();
  } catch (const ValidationError& e) {
    throw ConfigError("grid", e.what());
  }
  const auto& m = config.model;
  if (m.kind != "grid_markov" && m.kind != "independent" && m.kind != "file") {
    throw ConfigError("model.kind",
                      "expected grid_markov, independent or file");
  }
  if (!(m.vertical_weight >= 0.0 && m.vertical_weight <= 1.0)) {
    throw ConfigError("model.vertical_weight", "must lie in [0, 1]");
  }
  if (m.kind == "file" && m.path.empty()) {
    throw ConfigError("model.path", "required when model.kind is file");
  }
  const auto& h = config.heads;
  if (h.kind != "fitted" && h.kind != "exact" && h.kind != "file") {
    throw ConfigError("heads.kind", "expected fitted, exact or file");
  }
  if (h.sample_count < 1) {
    throw ConfigError("heads.sample_count", "must be >= 1");
  }
  if (!(h.smoothing >= 0.0)) throw ConfigError("heads.smoothing", "must be >= 0");
  if (h.heldout_samples < 1) {
    throw ConfigError("heads.heldout_samples", "must be >= 1");
  }
  for (int offset : h.offsets) {
    if (offset < 1) throw ConfigError("heads.offsets", "offsets must be >= 1");
  }
  if (h.kind == "file" && h.path.empty()) {
    throw ConfigError("heads.path", "required when heads.kind is file");
  }
  try {
    config.engine.validate();
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    const auto end = what.find(' ');
    throw ConfigError(what.substr(0, end), what.substr(end + 1));
  }
  if (config.oracle.samples < 1) {
    throw ConfigError("oracle.samples", "must be >= 1");
  }
  if (!(config.oracle.tolerance_factor > 0.0)) {
    throw ConfigError("oracle.tolerance_factor", "must be > 0");
  }
  if (config.bench.images < 1) throw ConfigError("bench.images", "must be >= 1");
  if (config.bench.curve_positions < 1) {
    throw ConfigError("bench.curve_positions", "must be >= 1");
  }
  if (config.bench.curve_max_candidates < 1) {
    throw ConfigError("bench.curve_max_candidates", "must be >= 1");
  }
  if (config.bench.modes.empty()) {
    throw ConfigError("bench.modes", "must name at least one mode");
  }
  if (config.output_dir.empty()) {
    throw ConfigError("output_dir", "must not be empty");
  }
}

std::string run_config_to_json(const RunConfig& c) {
  const EngineConfig& e = c.engine;
  ordered_json modes = ordered_json::array();
  for (DecodeMode m : c.bench.modes) modes.push_back(std::string(mode_name(m)));
  ordered_json top_k = e.target_sampling.top_k
                           ? ordered_json(*e.target_sampling.top_k)
                           : ordered_json("all");
  ordered_json j = {
      {"schema_version", c.schema_version},
      {"seed", c.seed},
      {"output_dir", c.output_dir},
      {"grid",
       {{"width", c.grid.width},
        {"height", c.grid.height},
        {"vocab_size", c.grid.vocab_size}}},
      {"model",
       {{"kind", c.model.kind},
        {"seed", c.model.seed},
        {"vertical_weight", c.model.vertical_weight},
        {"path", c.model.path}}},
      {"heads",
       {{"kind", c.heads.kind},
        {"sample_count", c.heads.sample_count},
        {"smoothing", c.heads.smoothing},
        {"offsets", c.heads.offsets},
        {"heldout_samples", c.heads.heldout_samples},
        {"path", c.heads.path}}},
      {"engine",
       {{"mode", std::string(mode_name(e.mode))},
        {"horizontal_depth", e.horizontal_depth},
        {"vertical_depth", e.vertical_depth},
        {"samples_horizontal", e.tree.samples_horizontal},
        {"samples_vertical", e.tree.samples_vertical},
        {"node_budget", e.tree.node_budget},
        {"verify_order", e.tree.order == VerifyOrder::kVerticalFirst
                             ? "vertical_first"
                             : "horizontal_first"},
        {"top_k", top_k},
        {"temperature", e.target_sampling.temperature},
        {"transform_drafts", e.transform_drafts},
        {"lantern_k", e.lantern_k},
        {"lantern_lambda", e.lantern_lambda},
        {"draft_overhead_ratio", e.draft_overhead_ratio},
        {"record_trace", e.record_trace}}},
      {"oracle",
       {{"samples", c.oracle.samples},
        {"tolerance_factor", c.oracle.tolerance_factor}}},
      {"bench",
       {{"images", c.bench.images},
        {"curve_positions", c.bench.curve_positions},
        {"curve_max_candidates", c.bench.curve_max_candidates},
        {"modes", modes}}}};
  return j.dump(2) + "\n";
}

}  // namespace hawk::cli
