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

#include <memory>
#include <vector>

#include <benchmark/benchmark.h>

#include "hawk/decoder.hpp"
#include "hawk/heads.hpp"
#include "hawk/models.hpp"
#include "hawk/oracle.hpp"
#include "hawk/verifier.hpp"

namespace hawk {
namespace {

TokenDistribution RandomDist(RandomStream& rng, int k) {
  std::vector<double> w(k);
  for (double& x : w) x = rng.uniform() + 1e-3;
  return normalize(w).dist;
}

void BM_SequentialVerify(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  RandomStream rng(1);
  const TokenDistribution p = RandomDist(rng, k);
  std::vector<Candidate> cands;
  for (int j = 0; j < m; ++j) {
    auto q = std::make_shared<const TokenDistribution>(RandomDist(rng, k));
    cands.push_back(Candidate{rng.categorical(*q), q, DraftSource::kHorizontal, 1});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(sequential_verify(p, cands, rng).emitted_token);
  }
}
BENCHMARK(BM_SequentialVerify)->Args({16, 1})->Args({16, 4})->Args({256, 4});

void BM_DecodeImage(benchmark::State& state) {
  const auto mode = static_cast<DecodeMode>(state.range(0));
  const GridSpec grid = GridSpec::make(16, 16, 16);
  const auto model = make_grid_markov_target(grid, 7, 0.9);
  FitOptions fit;
  fit.sample_count = 1000;
  const DraftHeadSet heads = fit_tabular_draft_heads(*model, 2, 2, fit);
  EngineConfig engine;
  engine.mode = mode;
  engine.vertical_depth = 2;
  const Decoder decoder(model, heads, engine);
  std::uint64_t seed = 0;
  double accept = 0.0;
  for (auto _ : state) {
    const DecodeResult r = decoder.decode_image(seed++);
    accept += r.metrics.accept_length();
  }
  state.counters["accept_length"] = accept / static_cast<double>(seed);
  state.SetLabel(std::string(mode_name(mode)));
}
BENCHMARK(BM_DecodeImage)
    ->Arg(static_cast<int>(DecodeMode::kVanilla))
    ->Arg(static_cast<int>(DecodeMode::kMedusa))
    ->Arg(static_cast<int>(DecodeMode::kHawk))
    ->Arg(static_cast<int>(DecodeMode::kLantern));

void BM_EnumerateJoint(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto model = make_grid_markov_target(GridSpec::make(2, 2, k), 3, 0.9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_joint(*model).mass.size());
  }
}
BENCHMARK(BM_EnumerateJoint)->Arg(3)->Arg(6);

}  // namespace
}  // namespace hawk

BENCHMARK_MAIN();
