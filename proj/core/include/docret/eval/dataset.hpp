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
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "docret/core/embedding.hpp"

namespace docret::eval {

struct CorpusDoc {
  std::string title;
  std::string text;
  std::optional<std::string> image_path;
};

/// query -> doc -> grade in {0, 1, 2}. Missing pairs are grade 0.
using QrelSet = std::map<QueryId, std::map<DocId, int>>;

int grade_of(const QrelSet& qrels, const QueryId& q, const DocId& d);
std::size_t positive_count(const QrelSet& qrels, const QueryId& q);
std::size_t judgment_count(const QrelSet& qrels);

struct BenchmarkDataset {
  std::map<DocId, CorpusDoc> corpus;
  std::map<QueryId, std::string> queries;
  QrelSet qrels;
};

/// Throws kDanglingReference (all offending ids in the message) or
/// kParseError when no query has a positive judgment.
void validate(const BenchmarkDataset& dataset);

/// `corpus.jsonl` alone. Throws kIoError, kParseError, kDuplicateId.
std::map<DocId, CorpusDoc> load_corpus(const std::filesystem::path& path);

/// Reads `corpus.jsonl`, `queries.jsonl` and `qrels/test.tsv`.
/// Throws kIoError, kParseError (with file:line), kDuplicateId,
/// kDanglingReference.
BenchmarkDataset load_beir(const std::filesystem::path& dir);

/// Writes the same three files; keys in sorted order.
void save_beir(const BenchmarkDataset& dataset,
               const std::filesystem::path& dir);

}  // namespace docret::eval
