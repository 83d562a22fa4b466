// Copyright 2026 The docret Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "docret/losses/losses.hpp"

namespace {

using namespace docret::losses;

LossBatch make_batch(std::size_t b, std::size_t k, std::size_t dim) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> dist;
  auto vec = [&] {
    Vector v(dim);
    for (auto& x : v) x = dist(rng);
    return v;
  };
  LossBatch batch;
  for (std::size_t i = 0; i < b; ++i) {
    batch.queries.push_back(vec());
    batch.positives.push_back(vec());
    if (k == 0) continue;
    batch.negatives.emplace_back();
    for (std::size_t j = 0; j < k; ++j) batch.negatives.back().push_back(vec());
  }
  return batch;
}

void BM_InfoNce(benchmark::State& state) {
  const auto batch = make_batch(static_cast<std::size_t>(state.range(0)), 0, 768);
  const LossConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(bi_encoder_loss(batch, config));
}
BENCHMARK(BM_InfoNce)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_BiNegativeCe(benchmark::State& state) {
  const auto batch = make_batch(32, static_cast<std::size_t>(state.range(0)), 768);
  const LossConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(bi_negative_ce_loss(batch, config));
}
BENCHMARK(BM_BiNegativeCe)->Arg(1)->Arg(3)->Unit(benchmark::kMicrosecond);

void BM_Matryoshka(benchmark::State& state) {
  const auto batch = make_batch(16, 3, 2560);
  const LossConfig config;
  for (auto _ : state) {
    benchmark::DoNotOptimize(matryoshka_wrap(bi_negative_ce_loss, batch, config));
  }
}
BENCHMARK(BM_Matryoshka)->Unit(benchmark::kMillisecond);

void BM_LateInteraction(benchmark::State& state) {
  std::mt19937_64 rng(12);
  LateInteractionBatch batch;
  for (int i = 0; i < 8; ++i) {
    batch.queries.push_back(TokenMatrix::from(bench::multi(32, 128, rng)));
    batch.docs.push_back(TokenMatrix::from(bench::multi(256, 128, rng)));
  }
  const LossConfig config;
  for (auto _ : state) {
    benchmark::DoNotOptimize(late_interaction_loss(batch, config, false));
  }
}
BENCHMARK(BM_LateInteraction)->Unit(benchmark::kMillisecond);

}  // namespace
