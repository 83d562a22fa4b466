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

#include "docret/eval/retrieval.hpp"

#include <variant>
#include <vector>

#include "docret/core/error.hpp"
#include "docret/core/parallel.hpp"

namespace docret::eval {
namespace {

bool keyed_by_id(const providers::EmbeddingProvider& provider) {
  return std::holds_alternative<providers::PrecomputedSpec>(provider.kind());
}

template <typename SearchFn>
RetrievalRun run_queries(const BenchmarkDataset& dataset,
                         const providers::EmbeddingProvider& provider,
                         const RetrievalOptions& options, SearchFn&& search) {
  if (options.depth == 0) fail(ErrorCode::kInvalidArgument, "depth must be >= 1");
  std::vector<const std::pair<const QueryId, std::string>*> queries;
  for (const auto& entry : dataset.queries) queries.push_back(&entry);
  std::vector<RankedList> lists(queries.size());
  parallel_for(queries.size(), options.threads, [&](std::size_t i) {
    const auto& [id, text] = *queries[i];
    lists[i] = search(provider_input(provider, id, text));
  });
  RetrievalRun run;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    run.emplace(queries[i]->first, std::move(lists[i]));
  }
  return run;
}

}  // namespace

std::string provider_input(const providers::EmbeddingProvider& provider,
                           const std::string& id, const std::string& text) {
  return keyed_by_id(provider) ? id : text;
}

std::string document_input(const providers::EmbeddingProvider& provider,
                           const DocId& id, const CorpusDoc& doc) {
  if (keyed_by_id(provider)) return doc.image_path.value_or(id);
  return doc.text.empty() ? doc.title : doc.text;
}

RetrievalRun run_retrieval(const BenchmarkDataset& dataset,
                           const providers::EmbeddingProvider& provider,
                           const scoring::DenseIndex& index,
                           const RetrievalOptions& options) {
  return run_queries(dataset, provider, options, [&](const std::string& input) {
    return index.search(provider.embed_text(input), options.depth, options.mode,
                        options.ef_search);
  });
}

RetrievalRun run_retrieval(const BenchmarkDataset& dataset,
                           const providers::EmbeddingProvider& provider,
                           const scoring::MultiVectorIndex& index,
                           const RetrievalOptions& options) {
  return run_queries(dataset, provider, options, [&](const std::string& input) {
    return index.search(
        provider.embed_text_multivector(input, options.max_query_tokens),
        options.depth, options.normalized_maxsim);
  });
}

}  // namespace docret::eval
