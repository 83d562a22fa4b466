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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "support.hpp"

namespace docret::oracle {
namespace {

using testing::code_of;

TEST(Oracle, MaxSimHandExample) {
  const auto q = MultiVectorEmbedding::from_rows({{1, 0}, {0.6f, 0.8f}});
  const auto d = MultiVectorEmbedding::from_rows({{1, 0}, {0, 1}});
  EXPECT_NEAR(oracle_maxsim(q, d), 1.8, 1e-6);
}

TEST(Oracle, PerfectRunAllOnes) {
  const eval::QrelSet qrels{{"q", {{"a", 2}, {"b", 1}}}};
  const std::map<QueryId, RankedList> run{{"q", {{"a", 0.9}, {"b", 0.8}, {"c", 0.1}}}};
  const auto m = oracle_metrics(run, qrels, 10);
  EXPECT_DOUBLE_EQ(m.mean.ndcg, 1.0);
  EXPECT_DOUBLE_EQ(m.mean.recall, 1.0);
  EXPECT_DOUBLE_EQ(m.mean.map, 1.0);
  EXPECT_DOUBLE_EQ(m.mean.mrr, 1.0);
}

TEST(Oracle, InfoNceHandValue) {
  losses::LossBatch b;
  b.queries = {{1, 0}, {0, 1}};
  b.positives = {{1, 0}, {0, 1}};
  EXPECT_NEAR(oracle_info_nce(b, 1.0), std::log(1.0 + std::exp(-1.0)), 1e-12);
}

TEST(Oracle, GradOfQuadraticIsExact) {
  losses::LossBatch b;
  b.queries = {{1.5, -2.0}};
  b.positives = {{0.5, 0.25}};
  const auto g = oracle_grad(
      [](const losses::LossBatch& x) {
        return x.queries[0][0] * x.queries[0][0] + 3.0 * x.positives[0][1];
      },
      b);
  EXPECT_NEAR(g.queries[0][0], 3.0, 1e-8);
  EXPECT_NEAR(g.queries[0][1], 0.0, 1e-8);
  EXPECT_NEAR(g.positives[0][1], 3.0, 1e-8);
}

TEST(Oracle, JacobiDiagonal) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 1000; ++i) rows.push_back({g(rng), 5.0 * g(rng), 2.0 * g(rng)});
  const auto p = oracle_pca(rows);
  EXPECT_NEAR(std::abs(p.components[0][1]), 1.0, 1e-2);
  EXPECT_NEAR(std::abs(p.components[1][2]), 1.0, 1e-2);
}

TEST(Oracle, LimitsEnforced) {
  EXPECT_EQ(code_of([] { check_limits(2001, 8); }), ErrorCode::kOracleLimitExceeded);
  EXPECT_EQ(code_of([] { check_limits(10, 65); }), ErrorCode::kOracleLimitExceeded);
  EXPECT_EQ(code_of([] { check_limits(10, 8, 9); }), ErrorCode::kOracleLimitExceeded);
  std::mt19937_64 rng(2);
  std::vector<DenseEmbedding> big;
  std::vector<DocId> ids;
  for (int i = 0; i < 3; ++i) {
    big.push_back(testing::random_unit(rng, 128));
    ids.push_back(std::to_string(i));
  }
  EXPECT_EQ(code_of([&] { oracle_knn(big, ids, big[0], 1); }),
            ErrorCode::kOracleLimitExceeded);
}

}  // namespace
}  // namespace docret::oracle
