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

#include "hawk/pgm.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "hawk/errors.hpp"

namespace hawk {

std::string encode_pgm(std::span<const int> tokens, const GridSpec& grid) {
  if (static_cast<int>(tokens.size()) != grid.size()) {
    throw ValidationError("image export needs a complete grid");
  }
  std::string out = "P5\n" + std::to_string(grid.width) + " " +
                    std::to_string(grid.height) + "\n255\n";
  const double scale = 255.0 / static_cast<double>(grid.vocab_size - 1);
  for (int token : tokens) {
    if (token < 0 || token >= grid.vocab_size) {
      throw ValidationError("token outside vocabulary");
    }
    out.push_back(static_cast<char>(
        static_cast<unsigned char>(std::lround(token * scale))));
  }
  return out;
}

PgmHeader parse_pgm_header(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw ValidationError("not a binary graymap");
  }
  std::size_t pos = 2;
  auto next_int = [&]() {
    // Skip whitespace and '#' comments.
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
        ++pos;
      } else {
        break;
      }
    }
    int value = 0;
    bool any = false;
    while (pos < bytes.size() &&
           std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
      value = value * 10 + (bytes[pos] - '0');
      ++pos;
      any = true;
    }
    if (!any) throw ValidationError("truncated graymap header");
    return value;
  };
  PgmHeader header;
  header.width = next_int();
  header.height = next_int();
  header.max_value = next_int();
  // Exactly one whitespace byte separates the header from the raster.
  header.data_offset = pos + 1;
  return header;
}

void export_grid_image(std::span<const int> tokens, const GridSpec& grid,
                       const std::filesystem::path& path) {
  const std::string bytes = encode_pgm(tokens, grid);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace hawk
