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
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <variant>

#include "docret/core/embedding.hpp"
#include "docret/providers/provider.hpp"

namespace docret::providers {

enum class RecordKind { kDense, kMultiVector };

struct EmbeddingRecord {
  std::string id;
  std::variant<DenseEmbedding, MultiVectorEmbedding> payload;

  RecordKind kind() const noexcept {
    return std::holds_alternative<DenseEmbedding>(payload)
               ? RecordKind::kDense
               : RecordKind::kMultiVector;
  }
  std::size_t dim() const noexcept;
};

using EmbeddingTable = std::map<std::string, EmbeddingRecord>;

// Line format, tab separated:
//   id  dense  v1,v2,...
//   id  mv     r1v1,r1v2,...;r2v1,...
// All records in one file share kind and dim. Values are kept as written;
// zero vectors/rows are rejected.
EmbeddingTable load_precomputed(const std::filesystem::path& path);
EmbeddingTable parse_precomputed(std::istream& in, std::string_view source);

/// Shortest round-trip decimal form, records in id order.
void write_precomputed(std::ostream& out, const EmbeddingTable& table);
void save_precomputed(const std::filesystem::path& path,
                      const EmbeddingTable& table);

class PrecomputedProvider final : public EmbeddingProvider {
 public:
  explicit PrecomputedProvider(PrecomputedSpec spec);
  PrecomputedProvider(PrecomputedSpec spec, EmbeddingTable table);

  /// `text` is a record id. Multivector records cannot serve dense lookups
  /// and vice versa (kDimMismatch); unknown ids throw kInvalidArgument.
  DenseEmbedding embed_text(std::string_view text) const override;
  MultiVectorEmbedding embed_text_multivector(
      std::string_view text, std::size_t max_tokens) const override;
  const ProviderKind& kind() const noexcept override { return kind_; }

  const EmbeddingTable& table() const noexcept { return table_; }

 private:
  const EmbeddingRecord& lookup(std::string_view id) const;

  ProviderKind kind_;
  EmbeddingTable table_;
};

}  // namespace docret::providers
