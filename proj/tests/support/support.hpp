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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "docret/core/embedding.hpp"
#include "docret/core/error.hpp"
#include "docret/eval/dataset.hpp"
#include "docret/losses/losses.hpp"

namespace docret::testing {

/// The code of the docret::Error thrown by fn, or nullopt if none is.
template <typename Fn>
std::optional<ErrorCode> code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "docret");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

std::vector<double> gaussian(std::mt19937_64& rng, std::size_t dim);
std::vector<double> unit_gaussian(std::mt19937_64& rng, std::size_t dim);
DenseEmbedding random_unit(std::mt19937_64& rng, std::size_t dim);
MultiVectorEmbedding random_multivector(std::mt19937_64& rng, std::size_t tokens,
                                        std::size_t dim);

losses::LossBatch random_batch(std::mt19937_64& rng, std::size_t b,
                               std::size_t k, std::size_t dim);
losses::LateInteractionBatch random_late_batch(std::mt19937_64& rng,
                                               std::size_t b, std::size_t dim);

/// Lower-case pseudo-words built from random syllables.
std::string random_words(std::mt19937_64& rng, std::size_t words);

/// BEIR-style fixture: every query is a contiguous run of its positive
/// document's words, so it shares all of its character 3-grams with that
/// document and few with any other. One grade-2 judgment per query.
eval::BenchmarkDataset toy_dataset(std::size_t docs, std::size_t queries,
                                   std::uint64_t seed);

/// Fraction of `a`'s distinct character 3-grams that also occur in `b`.
double trigram_overlap(const std::string& a, const std::string& b);

std::string read_text(const std::filesystem::path& path);

}  // namespace docret::testing
