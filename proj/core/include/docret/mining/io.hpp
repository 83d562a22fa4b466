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
#include <map>
#include <string>
#include <vector>

#include "docret/core/embedding.hpp"
#include "docret/mining/bm25.hpp"
#include "docret/mining/negatives.hpp"

namespace docret::mining {

/// JSONL lines `{"_id": ..., "text": ...}`.
std::vector<TextSidecar> read_sidecars(const std::filesystem::path& path);

/// TSV `doc-id <TAB> source-doc <TAB> page-no`; a header line starting
/// with `doc-id` is skipped.
std::vector<PageRef> read_pages(const std::filesystem::path& path);

struct MinedNegatives {
  QueryId query;
  DocId positive;
  std::vector<DocId> negatives;
};

/// TSV `query-id <TAB> positive-id <TAB> neg1,neg2,...`.
void write_negatives(const std::filesystem::path& path,
                     const std::vector<MinedNegatives>& rows);
std::vector<MinedNegatives> read_negatives(const std::filesystem::path& path);

}  // namespace docret::mining
