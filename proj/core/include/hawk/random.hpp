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
#include <random>
#include <string_view>

#include "hawk/distribution.hpp"

namespace hawk {

// SplitMix64 finalizer; used to derive independent seeds.
std::uint64_t mix64(std::uint64_t x);

// Seed for the stream identified by (master seed, purpose tag, index).
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                          std::uint64_t index = 0);

// A seedable, splittable random stream backed by std::mt19937_64. Doubles
// and categorical draws are computed here rather than through <random>
// distributions, whose output is implementation-defined, so results are
// identical across standard libraries.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static RandomStream derive(std::uint64_t master, std::string_view tag,
                             std::uint64_t index = 0) {
    return RandomStream(derive_seed(master, tag, index));
  }

  // Independent child stream; consumes one 64-bit draw from this stream.
  RandomStream split(std::string_view tag);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of precision.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Inverse-CDF draw; never returns a zero-probability token.
  int categorical(const TokenDistribution& dist);

  // Uniform integer in [0, n) by rejection (no modulo bias).
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace hawk
