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

#include <string>
#include <vector>

#include "bench_common.hpp"
#include "docret/scoring/dense_index.hpp"
#include "docret/scoring/similarity.hpp"

namespace {

using namespace docret;

void BM_Cosine(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto dim = static_cast<std::size_t>(state.range(0));
  const auto a = bench::dense(dim, rng);
  const auto b = bench::dense(dim, rng);
  for (auto _ : state) benchmark::DoNotOptimize(scoring::cosine(a, b));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Cosine)->Arg(128)->Arg(768)->Arg(2560);

void BM_MaxSim(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto q = bench::multi(32, 128, rng);
  const auto d = bench::multi(static_cast<std::size_t>(state.range(0)), 128, rng);
  for (auto _ : state) benchmark::DoNotOptimize(scoring::maxsim(q, d));
}
BENCHMARK(BM_MaxSim)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);

scoring::DenseIndex make_index(std::size_t n, std::size_t dim, bool ann) {
  std::mt19937_64 rng(3);
  std::vector<scoring::DenseRecord> records;
  records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    records.push_back({"d" + std::to_string(i), bench::dense(dim, rng)});
  }
  if (!ann) return scoring::DenseIndex::build(std::move(records));
  return scoring::DenseIndex::build(std::move(records), scoring::HnswParams{});
}

void BM_ExactSearch(benchmark::State& state) {
  const auto index = make_index(static_cast<std::size_t>(state.range(0)), 128, false);
  std::mt19937_64 rng(4);
  const auto q = bench::dense(128, rng);
  for (auto _ : state) benchmark::DoNotOptimize(index.search(q, 10));
}
BENCHMARK(BM_ExactSearch)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

void BM_AnnSearch(benchmark::State& state) {
  static const auto index = make_index(10000, 128, true);
  std::mt19937_64 rng(5);
  const auto q = bench::dense(128, rng);
  const auto ef = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.search(q, 10, scoring::SearchMode::kAnn, ef));
  }
}
BENCHMARK(BM_AnnSearch)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMicrosecond);

void BM_HnswBuild(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(6);
  const auto rows = bench::gaussian(n * 64, rng);
  std::vector<float> unit(rows);
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = docret::normalize(docret::DenseEmbedding(
        {rows.begin() + i * 64, rows.begin() + (i + 1) * 64}));
    std::copy(v.values().begin(), v.values().end(), unit.begin() + i * 64);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(scoring::HnswGraph::build(unit, 64, {}));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_HnswBuild)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace
