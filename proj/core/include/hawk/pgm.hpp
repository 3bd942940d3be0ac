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
#include <span>
#include <string>
#include <string_view>

#include "hawk/grid.hpp"

namespace hawk {

struct PgmHeader {
  int width = 0;
  int height = 0;
  int max_value = 0;
  std::size_t data_offset = 0;  // byte offset of the first pixel
};

// Binary 8-bit graymap (P5). Token t maps to round(255 * t / (K - 1)).
std::string encode_pgm(std::span<const int> tokens, const GridSpec& grid);

// Throws ValidationError when `bytes` is not a P5 header.
PgmHeader parse_pgm_header(std::string_view bytes);

// Writes encode_pgm(...) to `path`. Throws std::runtime_error on I/O failure.
void export_grid_image(std::span<const int> tokens, const GridSpec& grid,
                       const std::filesystem::path& path);

}  // namespace hawk
