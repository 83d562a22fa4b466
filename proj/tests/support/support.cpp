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

#include "support.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

#include "docret/core/utf8.hpp"

namespace docret::testing {

TempDir::TempDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          (tag + "-" + std::to_string(::getpid()) + "-" +
           std::to_string(counter.fetch_add(1)));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::vector<double> gaussian(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> v(dim);
  for (auto& x : v) x = n(rng);
  return v;
}

std::vector<double> unit_gaussian(std::mt19937_64& rng, std::size_t dim) {
  auto v = gaussian(rng, dim);
  double s = 0.0;
  for (const double x : v) s += x * x;
  s = std::sqrt(s);
  for (auto& x : v) x /= s;
  return v;
}

DenseEmbedding random_unit(std::mt19937_64& rng, std::size_t dim) {
  const auto v = unit_gaussian(rng, dim);
  return DenseEmbedding(std::vector<float>(v.begin(), v.end()));
}

MultiVectorEmbedding random_multivector(std::mt19937_64& rng, std::size_t tokens,
                                        std::size_t dim) {
  std::vector<float> data;
  for (std::size_t t = 0; t < tokens; ++t) {
    const auto v = unit_gaussian(rng, dim);
    data.insert(data.end(), v.begin(), v.end());
  }
  return MultiVectorEmbedding(tokens, dim, std::move(data));
}

losses::LossBatch random_batch(std::mt19937_64& rng, std::size_t b,
                               std::size_t k, std::size_t dim) {
  losses::LossBatch batch;
  for (std::size_t i = 0; i < b; ++i) {
    batch.queries.push_back(unit_gaussian(rng, dim));
    batch.positives.push_back(unit_gaussian(rng, dim));
    if (k > 0) {
      batch.negatives.emplace_back();
      for (std::size_t j = 0; j < k; ++j) {
        batch.negatives.back().push_back(unit_gaussian(rng, dim));
      }
    }
  }
  return batch;
}

losses::LateInteractionBatch random_late_batch(std::mt19937_64& rng,
                                               std::size_t b, std::size_t dim) {
  std::uniform_int_distribution<std::size_t> tokens(1, 4);
  losses::LateInteractionBatch batch;
  const auto matrix = [&](std::size_t rows) {
    losses::TokenMatrix m(rows, dim);
    for (std::size_t r = 0; r < rows; ++r) {
      const auto v = unit_gaussian(rng, dim);
      std::copy(v.begin(), v.end(), m.row(r).begin());
    }
    return m;
  };
  for (std::size_t i = 0; i < b; ++i) {
    batch.queries.push_back(matrix(tokens(rng)));
    batch.docs.push_back(matrix(tokens(rng)));
  }
  return batch;
}

std::string random_words(std::mt19937_64& rng, std::size_t words) {
  static const char* kOnsets[] = {"b", "d", "f", "g", "k", "l", "m", "n", "p",
                                  "r", "s", "t", "v", "z", "ch", "sh", "tr", "pl"};
  static const char* kVowels[] = {"a", "e", "i", "o", "u", "ai", "ou", "ei"};
  std::uniform_int_distribution<int> onset(0, std::size(kOnsets) - 1);
  std::uniform_int_distribution<int> vowel(0, std::size(kVowels) - 1);
  std::uniform_int_distribution<int> syllables(2, 4);
  std::string out;
  for (std::size_t w = 0; w < words; ++w) {
    if (w > 0) out += ' ';
    const int n = syllables(rng);
    for (int s = 0; s < n; ++s) {
      out += kOnsets[onset(rng)];
      out += kVowels[vowel(rng)];
    }
  }
  return out;
}

eval::BenchmarkDataset toy_dataset(std::size_t docs, std::size_t queries,
                                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  eval::BenchmarkDataset ds;
  std::vector<std::vector<std::string>> doc_words;
  for (std::size_t i = 0; i < docs; ++i) {
    char id[24];
    std::snprintf(id, sizeof(id), "d%04zu", i);
    const auto text = random_words(rng, 24);
    std::istringstream ss(text);
    doc_words.emplace_back();
    for (std::string w; ss >> w;) doc_words.back().push_back(w);
    ds.corpus[id] = {"doc " + std::to_string(i), text, std::nullopt};
  }
  std::uniform_int_distribution<std::size_t> start(0, 24 - 10);
  for (std::size_t i = 0; i < queries; ++i) {
    const std::size_t target = (i * 7919) % docs;
    const auto s = start(rng);
    std::string text;
    for (std::size_t w = s; w < s + 10; ++w) {
      if (!text.empty()) text += ' ';
      text += doc_words[target][w];
    }
    char qid[24];
    char did[24];
    std::snprintf(qid, sizeof(qid), "q%03zu", i);
    std::snprintf(did, sizeof(did), "d%04zu", target);
    ds.queries[qid] = text;
    ds.qrels[qid][did] = 2;
  }
  return ds;
}

double trigram_overlap(const std::string& a, const std::string& b) {
  const auto grams = [](const std::string& s) {
    const auto cps = utf8::decode(s);
    std::set<std::u32string> out;
    for (std::size_t i = 0; i + 3 <= cps.size(); ++i) {
      out.insert(std::u32string(cps.begin() + long(i), cps.begin() + long(i) + 3));
    }
    return out;
  };
  const auto ga = grams(a);
  const auto gb = grams(b);
  if (ga.empty()) return 0.0;
  std::size_t shared = 0;
  for (const auto& g : ga) shared += gb.count(g);
  return double(shared) / double(ga.size());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace docret::testing
