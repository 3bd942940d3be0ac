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

#include "hawk/random.hpp"

#include "hawk/errors.hpp"

namespace hawk {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                          std::uint64_t index) {
  // FNV-1a over the tag, then mixed with the master seed and index.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return mix64(mix64(master ^ h) + index);
}

RandomStream RandomStream::split(std::string_view tag) {
  return RandomStream(derive_seed(next_u64(), tag));
}

int RandomStream::categorical(const TokenDistribution& dist) {
  const double u = uniform();
  double cumulative = 0.0;
  int last_positive = -1;
  for (int i = 0; i < dist.size(); ++i) {
    if (dist[i] <= 0.0) continue;
    last_positive = i;
    cumulative += dist[i];
    if (u < cumulative) return i;
  }
  // Rounding left u above the accumulated mass; return the last live token.
  if (last_positive < 0) throw StateError("categorical on empty support");
  return last_positive;
}

std::uint64_t RandomStream::below(std::uint64_t n) {
  if (n == 0) throw ValidationError("below(0)");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

}  // namespace hawk
