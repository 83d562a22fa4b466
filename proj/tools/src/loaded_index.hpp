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

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "common.hpp"
#include "docret/core/ranking.hpp"
#include "docret/scoring/dense_index.hpp"
#include "docret/scoring/multivector_index.hpp"

namespace docret::cli {

/// An index directory together with the provider that embeds its queries.
class LoadedIndex {
 public:
  static LoadedIndex open(const std::filesystem::path& dir);

  /// `query` is text, or a record id for precomputed providers.
  RankedList search(const std::string& query, std::size_t k,
                    scoring::SearchMode mode,
                    std::optional<std::size_t> ef_search,
                    bool normalized_maxsim) const;

  bool multivector() const noexcept { return settings_.multivector; }
  std::size_t size() const noexcept;
  const IndexProvider& settings() const noexcept { return settings_; }
  const providers::EmbeddingProvider& provider() const noexcept { return *provider_; }
  const scoring::DenseIndex* dense() const noexcept {
    return std::get_if<scoring::DenseIndex>(&index_);
  }
  const scoring::MultiVectorIndex* multi() const noexcept {
    return std::get_if<scoring::MultiVectorIndex>(&index_);
  }

 private:
  IndexProvider settings_;
  std::shared_ptr<const providers::EmbeddingProvider> provider_;
  std::variant<scoring::DenseIndex, scoring::MultiVectorIndex> index_;
};

scoring::SearchMode parse_search_mode(const std::string& text);

}  // namespace docret::cli
