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

#include <algorithm>
#include <cmath>
#include <vector>

#include "hawk/distribution.hpp"
#include "hawk/random.hpp"

namespace hawk::testing {

// Random distribution over `k` tokens; each entry is zeroed with probability
// `zero_rate` (at least one entry always keeps mass).
inline TokenDistribution random_dist(RandomStream& rng, int k,
                                     double zero_rate = 0.0) {
  std::vector<double> w(k);
  double total = 0.0;
  for (double& x : w) {
    x = rng.uniform() < zero_rate ? 0.0 : rng.uniform() + 1e-3;
    total += x;
  }
  if (total == 0.0) w[rng.below(k)] = 1.0;
  return normalize(w).dist;
}

// Residual update written out longhand, independent of the library.
inline std::vector<double> longhand_residual(const std::vector<double>& p,
                                             const std::vector<double>& q) {
  std::vector<double> r(p.size());
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    r[i] = p[i] > q[i] ? p[i] - q[i] : 0.0;
    total += r[i];
  }
  for (double& x : r) x /= total;
  return r;
}

inline double longhand_alpha(const std::vector<double>& p,
                             const std::vector<double>& q) {
  double a = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) a += std::min(p[i], q[i]);
  return a;
}

inline double max_abs_diff(const std::vector<double>& a,
                           const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::fabs(a[i] - b[i]));
  }
  return m;
}

}  // namespace hawk::testing
