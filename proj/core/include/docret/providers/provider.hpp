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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "docret/core/embedding.hpp"

namespace docret::providers {

/// Hashed character 3-gram embedder; needs no model.
struct SyntheticSpec {
  std::uint64_t seed = 42;
  std::size_t dim = 64;
};

/// Embeddings read from a precomputed file; "text" is the record id.
struct PrecomputedSpec {
  std::filesystem::path path;
};

/// HTTP embedding service speaking the `/embed` protocol.
struct RemoteSpec {
  std::string base_url;
  int timeout_ms = 30000;
  std::size_t max_in_flight = 8;
};

using ProviderKind = std::variant<SyntheticSpec, PrecomputedSpec, RemoteSpec>;

/// Throws kInvalidArgument when a spec violates its bounds
/// (synthetic dim >= 8, remote timeout >= 1 ms, max_in_flight >= 1).
void validate(const ProviderKind& kind);

/// Source of query/document embeddings. Implementations are immutable after
/// construction and safe to call concurrently.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  /// Unit-norm embedding, deterministic per (provider config, text).
  /// Throws kEmptyText for blank input.
  virtual DenseEmbedding embed_text(std::string_view text) const = 0;

  /// 1..max_tokens unit-norm rows. Throws kEmptyText for blank input.
  virtual MultiVectorEmbedding embed_text_multivector(
      std::string_view text, std::size_t max_tokens) const = 0;

  virtual const ProviderKind& kind() const noexcept = 0;
};

std::unique_ptr<EmbeddingProvider> make_provider(const ProviderKind& kind);

/// Seeded 64-bit hash of a byte string (FNV-1a folded through a
/// splitmix64 finalizer). Stable across platforms and processes.
std::uint64_t seeded_hash(std::string_view bytes, std::uint64_t seed) noexcept;

class SyntheticProvider final : public EmbeddingProvider {
 public:
  explicit SyntheticProvider(SyntheticSpec spec);

  DenseEmbedding embed_text(std::string_view text) const override;
  MultiVectorEmbedding embed_text_multivector(
      std::string_view text, std::size_t max_tokens) const override;
  const ProviderKind& kind() const noexcept override { return kind_; }

 private:
  SyntheticSpec spec_;
  ProviderKind kind_;
};

}  // namespace docret::providers
