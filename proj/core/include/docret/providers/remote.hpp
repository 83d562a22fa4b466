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

#include <memory>
#include <string>
#include <vector>

#include "docret/providers/provider.hpp"

namespace docret::providers {

/// Client for an external embedding service.
///
///   POST {base_url}/embed
///   {"inputs": ["..."], "mode": "dense" | "multivector"}
///   -> {"embeddings": [[...]]}          (dense)
///   -> {"embeddings": [[[...], ...]]}   (multivector)
///
/// Any transport failure, non-200 status or malformed reply surfaces as
/// kRemoteUnavailable. At most `max_in_flight` requests are outstanding.
class RemoteProvider final : public EmbeddingProvider {
 public:
  explicit RemoteProvider(RemoteSpec spec);
  ~RemoteProvider() override;

  DenseEmbedding embed_text(std::string_view text) const override;
  MultiVectorEmbedding embed_text_multivector(
      std::string_view text, std::size_t max_tokens) const override;
  const ProviderKind& kind() const noexcept override { return kind_; }

  std::vector<DenseEmbedding> embed_batch(
      const std::vector<std::string>& texts) const;

 private:
  struct Gate;

  std::string post_embed(const std::string& body) const;

  RemoteSpec spec_;
  ProviderKind kind_;
  std::unique_ptr<Gate> gate_;
};

}  // namespace docret::providers
