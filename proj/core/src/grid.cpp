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

#include "hawk/grid.hpp"

#include <limits>
#include <string>

#include "hawk/errors.hpp"

namespace hawk {

GridSpec GridSpec::make(int width, int height, int vocab_size) {
  GridSpec grid{width, height, vocab_size};
  grid.validate();
  return grid;
}

void GridSpec::validate() const {
  if (width < 1) throw ValidationError("grid.width must be >= 1");
  if (height < 1) throw ValidationError("grid.height must be >= 1");
  if (vocab_size < 2) throw ValidationError("grid.vocab_size must be >= 2");
  if (static_cast<std::int64_t>(width) * height >
      std::numeric_limits<int>::max()) {
    throw ValidationError("grid.width * grid.height overflows");
  }
}

int rowcol_to_raster(Position pos, const GridSpec& grid) {
  if (pos.row < 0 || pos.row >= grid.height || pos.col < 0 ||
      pos.col >= grid.width) {
    throw BoundsError("position (" + std::to_string(pos.row) + ", " +
                      std::to_string(pos.col) + ") outside " +
                      std::to_string(grid.height) + "x" +
                      std::to_string(grid.width) + " grid");
  }
  return pos.row * grid.width + pos.col;
}

Position raster_to_rowcol(int idx, const GridSpec& grid) {
  if (idx < 0 || idx >= grid.size()) {
    throw BoundsError("raster index " + std::to_string(idx) +
                      " outside [0, " + std::to_string(grid.size()) + ")");
  }
  return Position{idx / grid.width, idx % grid.width};
}

}  // namespace hawk
