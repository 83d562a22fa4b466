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
#include <optional>
#include <string>

#include "docret/eval/dataset.hpp"
#include "docret/eval/metrics.hpp"
#include "docret/providers/provider.hpp"
#include "docret/scoring/dense_index.hpp"
#include "docret/scoring/multivector_index.hpp"

namespace docret::eval {

struct RetrievalOptions {
  std::size_t depth = 100;
  std::size_t threads = 1;
  scoring::SearchMode mode = scoring::SearchMode::kExact;
  std::optional<std::size_t> ef_search;
  bool normalized_maxsim = false;
  std::size_t max_query_tokens = 32;
};

/// What to hand the provider for an item: the id for precomputed
/// providers (which look records up by id), the text otherwise.
std::string provider_input(const providers::EmbeddingProvider& provider,
                           const std::string& id, const std::string& text);

/// Same for a corpus document: image path or id for precomputed
/// providers; text, falling back to title, otherwise.
std::string document_input(const providers::EmbeddingProvider& provider,
                           const DocId& id, const CorpusDoc& doc);

/// One ranked list per dataset query, cut to `depth`. Queries are
/// embedded and searched in parallel; output is independent of `threads`.
RetrievalRun run_retrieval(const BenchmarkDataset& dataset,
                           const providers::EmbeddingProvider& provider,
                           const scoring::DenseIndex& index,
                           const RetrievalOptions& options);

RetrievalRun run_retrieval(const BenchmarkDataset& dataset,
                           const providers::EmbeddingProvider& provider,
                           const scoring::MultiVectorIndex& index,
                           const RetrievalOptions& options);

}  // namespace docret::eval
