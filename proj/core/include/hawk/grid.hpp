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

namespace hawk {

// Geometry of a raster-ordered token grid.
struct GridSpec {
  int width = 1;       // tokens per row
  int height = 1;      // rows
  int vocab_size = 2;  // K

  // Validating constructor; throws ValidationError on a degenerate grid.
  static GridSpec make(int width, int height, int vocab_size);

  int size() const { return width * height; }
  void validate() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct Position {
  int row = 0;
  int col = 0;

  friend bool operator==(const Position&, const Position&) = default;
};

// row * width + col. Throws BoundsError when `pos` lies outside `grid`.
int rowcol_to_raster(Position pos, const GridSpec& grid);

// Inverse of rowcol_to_raster. Throws BoundsError for idx outside [0, size).
Position raster_to_rowcol(int idx, const GridSpec& grid);

}  // namespace hawk
