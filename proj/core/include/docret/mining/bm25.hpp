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
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "docret/core/ranking.hpp"

namespace docret::mining {

/// Extracted page text keyed by document.
struct TextSidecar {
  DocId doc;
  std::string text;
};

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

/// Okapi BM25 over an in-memory corpus with the non-negative IDF
/// ln(1 + (N - df + 0.5) / (df + 0.5)). Scores are summed over the unique
/// query terms.
class Bm25Index {
 public:
  /// Throws kInvalidArgument for an empty corpus, kDuplicateId.
  explicit Bm25Index(std::vector<TextSidecar> sidecars, Bm25Params params = {});

  /// Every document scored (zero when no term matches), canonical order,
  /// cut to `top_n`. Throws kEmptyQuery when the query has no tokens.
  RankedList rank(std::string_view query, std::size_t top_n) const;

  double idf(std::string_view term) const;
  std::size_t size() const noexcept { return ids_.size(); }
  double average_length() const noexcept { return avg_len_; }

 private:
  struct Posting {
    std::size_t doc;
    std::size_t tf;
  };

  Bm25Params params_;
  std::vector<DocId> ids_;
  std::vector<std::size_t> lengths_;
  double avg_len_ = 0.0;
  std::unordered_map<std::string, std::vector<Posting>> postings_;
};

RankedList bm25_rank(std::string_view query,
                     const std::vector<TextSidecar>& sidecars,
                     std::size_t top_n);

}  // namespace docret::mining
