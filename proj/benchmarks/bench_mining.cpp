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

#include <random>
#include <string>
#include <vector>

#include "docret/mining/bm25.hpp"
#include "docret/mining/fusion.hpp"

namespace {

using namespace docret;

std::vector<mining::TextSidecar> make_corpus(std::size_t n) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> word(0, 4999);
  std::vector<mining::TextSidecar> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::string text;
    for (int w = 0; w < 200; ++w) text += "w" + std::to_string(word(rng)) + ' ';
    out.push_back({"d" + std::to_string(i), std::move(text)});
  }
  return out;
}

void BM_Bm25Rank(benchmark::State& state) {
  const mining::Bm25Index index(make_corpus(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(index.rank("w1 w17 w250 w4000", 100));
}
BENCHMARK(BM_Bm25Rank)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

void BM_RrfFuse(benchmark::State& state) {
  std::mt19937_64 rng(22);
  const auto depth = static_cast<std::size_t>(state.range(0));
  std::vector<RankedList> lists(3);
  for (auto& list : lists) {
    std::vector<int> perm(depth * 4);
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t r = 0; r < depth; ++r) {
      list.push_back({"d" + std::to_string(perm[r]), 1.0 / static_cast<double>(r + 1)});
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(mining::rrf_fuse(lists, 60.0));
}
BENCHMARK(BM_RrfFuse)->Arg(20)->Arg(100)->Unit(benchmark::kMicrosecond);

}  // namespace
