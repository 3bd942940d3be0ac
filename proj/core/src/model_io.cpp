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

#include "hawk/model_io.hpp"

#include <nlohmann/json.hpp>

#include "hawk/errors.hpp"

namespace hawk {

namespace {

using nlohmann::json;

constexpr std::string_view kGridMarkovFormat = "hawk.grid_markov";
constexpr std::string_view kIndependentFormat = "hawk.independent";
constexpr std::string_view kHeadSetFormat = "hawk.head_set";

json grid_to_json(const GridSpec& grid) {
  return json{{"width", grid.width},
              {"height", grid.height},
              {"vocab_size", grid.vocab_size}};
}

GridSpec grid_from_json(const json& j) {
  return GridSpec::make(j.at("width").get<int>(), j.at("height").get<int>(),
                        j.at("vocab_size").get<int>());
}

json rows_to_json(const std::vector<TokenDistribution>& rows) {
  json out = json::array();
  for (const auto& row : rows) out.push_back(row.values());
  return out;
}

std::vector<TokenDistribution> rows_from_json(const json& j) {
  std::vector<TokenDistribution> rows;
  rows.reserve(j.size());
  for (const auto& row : j) {
    rows.emplace_back(row.get<std::vector<double>>());
  }
  return rows;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed model file: ") + e.what());
  }
}

void check_header(const json& j, std::string_view format) {
  if (j.at("format").get<std::string>() != format) {
    throw ValidationError("expected format " + std::string(format));
  }
  if (j.at("version").get<int>() != kModelFormatVersion) {
    throw ValidationError("unsupported model file version");
  }
}

template <typename Fn>
auto rethrow_as_validation(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("model file: ") + e.what());
  }
}

}  // namespace

std::string serialize_model(const TargetModel& model) {
  json j;
  if (const auto* markov = dynamic_cast<const GridMarkovModel*>(&model)) {
    const int k = markov->grid().vocab_size;
    json tables = json::array();
    // Nested as [left][above][token].
    for (int left = 0; left <= k; ++left) {
      json by_above = json::array();
      for (int above = 0; above <= k; ++above) {
        by_above.push_back(markov->table(left, above).values());
      }
      tables.push_back(std::move(by_above));
    }
    j = json{{"format", kGridMarkovFormat},
             {"version", kModelFormatVersion},
             {"grid", grid_to_json(markov->grid())},
             {"seed", markov->seed()},
             {"vertical_weight", markov->vertical_weight()},
             {"tables", std::move(tables)}};
  } else if (const auto* indep =
                 dynamic_cast<const IndependentPositionModel*>(&model)) {
    j = json{{"format", kIndependentFormat},
             {"version", kModelFormatVersion},
             {"grid", grid_to_json(indep->grid())},
             {"seed", indep->seed()},
             {"tables", rows_to_json(indep->tables())}};
  } else {
    throw ValidationError("model type has no file representation");
  }
  return j.dump(1) + "\n";
}

std::shared_ptr<const TargetModel> parse_model(std::string_view text) {
  const json j = parse_json(text);
  return rethrow_as_validation([&]() -> std::shared_ptr<const TargetModel> {
    const std::string format = j.at("format").get<std::string>();
    if (format == kGridMarkovFormat) {
      check_header(j, kGridMarkovFormat);
      const GridSpec grid = grid_from_json(j.at("grid"));
      std::vector<TokenDistribution> tables;
      for (const auto& by_above : j.at("tables")) {
        for (const auto& row : by_above) {
          tables.emplace_back(row.get<std::vector<double>>());
        }
      }
      return std::make_shared<const GridMarkovModel>(
          grid, j.at("seed").get<std::uint64_t>(),
          j.at("vertical_weight").get<double>(), std::move(tables));
    }
    if (format == kIndependentFormat) {
      check_header(j, kIndependentFormat);
      return std::make_shared<const IndependentPositionModel>(
          grid_from_json(j.at("grid")), j.at("seed").get<std::uint64_t>(),
          rows_from_json(j.at("tables")));
    }
    throw ValidationError("unknown model format '" + format + "'");
  });
}

std::string serialize_heads(const TabularHeadFile& file) {
  json heads = json::array();
  for (const auto& head : file.heads) {
    heads.push_back(
        json{{"offset", head->offset()}, {"tables", rows_to_json(head->tables())}});
  }
  const json j{{"format", kHeadSetFormat},
               {"version", kModelFormatVersion},
               {"grid", grid_to_json(file.grid)},
               {"seed", file.seed},
               {"sample_count", file.sample_count},
               {"smoothing", file.smoothing},
               {"heads", std::move(heads)}};
  return j.dump(1) + "\n";
}

TabularHeadFile parse_heads(std::string_view text) {
  const json j = parse_json(text);
  return rethrow_as_validation([&] {
    check_header(j, kHeadSetFormat);
    TabularHeadFile file;
    file.grid = grid_from_json(j.at("grid"));
    file.seed = j.at("seed").get<std::uint64_t>();
    file.sample_count = j.at("sample_count").get<int>();
    file.smoothing = j.at("smoothing").get<double>();
    for (const auto& head : j.at("heads")) {
      file.heads.push_back(std::make_shared<const TabularDraftHead>(
          file.grid, head.at("offset").get<int>(),
          rows_from_json(head.at("tables"))));
    }
    return file;
  });
}

}  // namespace hawk
