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
#include <fstream>
#include <random>

#include "docret/analysis/heatmap.hpp"
#include "docret/analysis/io.hpp"
#include "docret/analysis/pca.hpp"
#include "docret/analysis/storage.hpp"
#include "docret/scoring/similarity.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace docret::analysis {
namespace {

using testing::code_of;

std::vector<DenseEmbedding> to_embeddings(const std::vector<std::vector<double>>& rows) {
  std::vector<DenseEmbedding> out;
  for (const auto& r : rows) out.emplace_back(std::vector<float>(r.begin(), r.end()));
  return out;
}

std::vector<std::vector<double>> as_rows(const std::vector<DenseEmbedding>& e) {
  std::vector<std::vector<double>> out;
  for (const auto& v : e) out.emplace_back(v.values().begin(), v.values().end());
  return out;
}

TEST(Pca, PlanarPointsKeepDistances) {
  std::mt19937_64 rng(1);
  const auto u = testing::unit_gaussian(rng, 10);
  auto w = testing::unit_gaussian(rng, 10);
  double d = 0;
  for (int i = 0; i < 10; ++i) d += u[i] * w[i];
  for (int i = 0; i < 10; ++i) w[i] -= d * u[i];
  double n = 0;
  for (const double x : w) n += x * x;
  for (auto& x : w) x /= std::sqrt(n);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<std::vector<double>> rows;
  for (int p = 0; p < 40; ++p) {
    const double a = g(rng), b = g(rng);
    std::vector<double> r(10);
    for (int i = 0; i < 10; ++i) r[i] = 0.5 + a * u[i] + b * w[i];
    rows.push_back(r);
  }
  const auto emb = to_embeddings(rows);
  const auto proj = pca_project(emb, {});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      double full = 0;
      for (int k = 0; k < 10; ++k) {
        const double x = double(emb[i][k]) - emb[j][k];
        full += x * x;
      }
      const double dx = proj.points[i][0] - proj.points[j][0];
      const double dy = proj.points[i][1] - proj.points[j][1];
      EXPECT_NEAR(std::sqrt(dx * dx + dy * dy) / std::sqrt(full), 1.0, 1e-6);
    }
  }
}

TEST(Pca, IsotropicCloudRatios) {
  std::mt19937_64 rng(2);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 1000; ++i) rows.push_back(testing::gaussian(rng, 16));
  const auto proj = pca_project(to_embeddings(rows), {});
  EXPECT_NEAR(proj.explained_variance_ratio[0], 1.0 / 16.0, 0.02);
  EXPECT_NEAR(proj.explained_variance_ratio[1], 1.0 / 16.0, 0.02);
  EXPECT_GE(proj.explained_variance_ratio[0], proj.explained_variance_ratio[1]);
}

TEST(Pca, DiagonalCovarianceAxes) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  const std::vector<double> scale{0.5, 3.0, 1.0, 2.0, 0.2};
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 2000; ++i) {
    std::vector<double> r(5);
    for (int k = 0; k < 5; ++k) r[k] = scale[k] * g(rng);
    rows.push_back(r);
  }
  const auto proj = pca_project(to_embeddings(rows), {});
  EXPECT_NEAR(std::abs(proj.components[0][1]), 1.0, 0.01);
  EXPECT_NEAR(std::abs(proj.components[1][3]), 1.0, 0.01);
}

TEST(Pca, AgreesWithJacobiOracle) {
  std::mt19937_64 rng(4);
  std::vector<std::vector<double>> rows;
  std::normal_distribution<double> g(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    auto r = testing::gaussian(rng, 12);
    r[0] *= 4.0;
    r[5] = 0.5 * r[0] + 2.0 * r[5];
    rows.push_back(r);
  }
  const auto emb = to_embeddings(rows);
  const auto proj = pca_project(emb, {});
  const auto ref = oracle::oracle_pca(as_rows(emb));
  for (int c = 0; c < 2; ++c) {
    EXPECT_NEAR(proj.explained_variance_ratio[c], ref.ratios[c], 1e-9);
    for (std::size_t k = 0; k < 12; ++k) {
      EXPECT_NEAR(proj.components[c][k], ref.components[c][k], 1e-7);
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_NEAR(proj.points[i][0], ref.points[i][0], 1e-6);
  }
}

TEST(Pca, PowerIterationPathMatchesExactPath) {
  std::mt19937_64 rng(5);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 200; ++i) {
    auto r = testing::gaussian(rng, 40);
    r[3] *= 6.0;
    r[17] *= 3.0;
    rows.push_back(r);
  }
  const auto emb = to_embeddings(rows);
  const auto exact = pca_project(emb, {});
  PcaOptions iterative;
  iterative.exact_max_dim = 8;
  const auto approx = pca_project(emb, {}, iterative);
  for (int c = 0; c < 2; ++c) {
    EXPECT_NEAR(approx.explained_variance_ratio[c], exact.explained_variance_ratio[c], 1e-6);
    for (std::size_t k = 0; k < 40; ++k) {
      EXPECT_NEAR(approx.components[c][k], exact.components[c][k], 1e-4);
    }
  }
}

TEST(Pca, SignConventionAndErrors) {
  std::mt19937_64 rng(6);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 50; ++i) rows.push_back(testing::gaussian(rng, 6));
  const auto proj = pca_project(to_embeddings(rows), {});
  for (int c = 0; c < 2; ++c) {
    for (const double x : proj.components[c]) {
      if (std::abs(x) > 1e-10) {
        EXPECT_GT(x, 0.0);
        break;
      }
    }
  }
  const std::vector<std::vector<double>> same(5, {1.0, 2.0, 3.0});
  EXPECT_EQ(code_of([&] { pca_project(to_embeddings(same), {}); }),
            ErrorCode::kDegenerateData);
  EXPECT_EQ(code_of([&] { pca_project(to_embeddings({{1, 2}, {3, 4}}), {}); }),
            ErrorCode::kInvalidArgument);
}

TEST(Heatmap, SixteenBySixteenGrid) {
  std::mt19937_64 rng(7);
  const auto d = testing::random_multivector(rng, 256, 8);
  const auto q = testing::random_multivector(rng, 3, 8);
  const auto grid = square_grid(d.n_tokens());
  EXPECT_EQ(grid.rows, 16u);
  const auto maps = maxsim_heatmap(q, d, grid);
  ASSERT_EQ(maps.size(), 3u);
  EXPECT_EQ(maps[0].values.size(), 256u);
  EXPECT_EQ(code_of([&] { maxsim_heatmap(q, d, {15, 16}); }), ErrorCode::kGridMismatch);
  EXPECT_EQ(code_of([] { square_grid(255); }), ErrorCode::kGridMismatch);
}

TEST(Heatmap, IdenticalTokenFoundAtItsCell) {
  std::mt19937_64 rng(8);
  const auto d = testing::random_multivector(rng, 12, 16);
  const auto row = d.row(7);
  const auto q = MultiVectorEmbedding(1, 16, {row.begin(), row.end()});
  const auto maps = maxsim_heatmap(q, d, {3, 4});
  EXPECT_EQ(maps[0].argmax_row * 4 + maps[0].argmax_col, 7u);
  EXPECT_NEAR(maps[0].token_max, 1.0, 1e-6);
}

TEST(Heatmap, TokenMaximaSumToMaxSim) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    const auto q = testing::random_multivector(rng, 1 + t % 5, 8);
    const auto d = testing::random_multivector(rng, 16, 8);
    double total = 0.0;
    for (const auto& g : maxsim_heatmap(q, d, {4, 4})) {
      total += g.token_max;
      EXPECT_NEAR(g.token_max, *std::max_element(g.values.begin(), g.values.end()), 1e-12);
    }
    EXPECT_NEAR(total, scoring::maxsim(q, d), 1e-6);
  }
}

TEST(Heatmap, PermutingDocTokensPermutesGrid) {
  std::mt19937_64 rng(10);
  const auto q = testing::random_multivector(rng, 2, 8);
  const auto d = testing::random_multivector(rng, 9, 8);
  std::vector<std::size_t> perm{4, 2, 7, 0, 8, 1, 3, 6, 5};
  std::vector<float> data;
  for (const auto p : perm) data.insert(data.end(), d.row(p).begin(), d.row(p).end());
  const MultiVectorEmbedding shuffled(9, 8, data);
  const auto a = maxsim_heatmap(q, d, {3, 3});
  const auto b = maxsim_heatmap(q, shuffled, {3, 3});
  for (std::size_t t = 0; t < 2; ++t) {
    for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(b[t].values[i], a[t].values[perm[i]]);
  }
}

TEST(Storage, MatryoshkaBytesPerDoc) {
  const auto entries = matryoshka_storage({768, 1536, 2560}, 1000);
  EXPECT_EQ(entries[0].bytes_per_doc, 3072.0);
  EXPECT_EQ(entries[1].bytes_per_doc, 6144.0);
  EXPECT_EQ(entries[2].bytes_per_doc, 10240.0);
  const auto text = format_storage_report(entries);
  EXPECT_NE(text.find("10,240"), std::string::npos);
  EXPECT_NE(text.find("3,072"), std::string::npos);
  EXPECT_NE(text.find("3.333x"), std::string::npos);
}

TEST(Storage, MultivectorPageBytes) {
  EXPECT_EQ(multivector_storage("mv", 256, 128, 1).bytes_per_doc, 131072.0);
  EXPECT_EQ(group_thousands(131072), "131,072");
  EXPECT_EQ(group_thousands(12), "12");
}

TEST(AnalysisIo, LabelsAndOutputs) {
  testing::TempDir dir;
  {
    std::ofstream l(dir / "labels.tsv");
    l << "a\thi\tquery\nb\ten\tdocument\n";
  }
  const auto labels = read_labels(dir / "labels.tsv");
  EXPECT_EQ(labels.at("b").language, "en");
  {
    std::ofstream l(dir / "bad.tsv");
    l << "a\thi\tpassage\n";
  }
  EXPECT_EQ(code_of([&] { read_labels(dir / "bad.tsv"); }), ErrorCode::kParseError);
  std::mt19937_64 rng(11);
  const auto maps = maxsim_heatmap(testing::random_multivector(rng, 2, 4),
                                   testing::random_multivector(rng, 4, 4), {2, 2});
  write_heatmaps(dir / "heat", maps);
  EXPECT_TRUE(std::filesystem::exists(dir / "heat" / "token_1.csv"));
  EXPECT_NE(testing::read_text(dir / "heat" / "summary.json").find("maxsim"), std::string::npos);
}

}  // namespace
}  // namespace docret::analysis
