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

#include "loaded_index.hpp"

#include "docret/eval/retrieval.hpp"

namespace docret::cli {

LoadedIndex LoadedIndex::open(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    fail(ErrorCode::kIoError, "index dir not found: " + dir.string());
  }
  LoadedIndex out;
  out.settings_ = load_index_provider(dir);
  const auto kind = scoring::read_index_kind(dir);
  if ((kind == "multivector") != out.settings_.multivector) {
    fail(ErrorCode::kParseError, dir.string() + ": provider.json disagrees with meta.json");
  }
  if (out.settings_.multivector) {
    out.index_ = scoring::MultiVectorIndex::load(dir);
  } else {
    out.index_ = scoring::DenseIndex::load(dir);
  }
  out.provider_ = providers::make_provider(out.settings_.kind);
  return out;
}

std::size_t LoadedIndex::size() const noexcept {
  return std::visit([](const auto& i) { return i.size(); }, index_);
}

RankedList LoadedIndex::search(const std::string& query, std::size_t k,
                               scoring::SearchMode mode,
                               std::optional<std::size_t> ef_search,
                               bool normalized_maxsim) const {
  const auto input = eval::provider_input(*provider_, query, query);
  if (const auto* d = dense()) {
    return d->search(provider_->embed_text(input), k, mode, ef_search);
  }
  if (mode == scoring::SearchMode::kAnn) {
    fail(ErrorCode::kAnnUnavailable, "multivector indexes are exact only");
  }
  return multi()->search(
      provider_->embed_text_multivector(input, settings_.query_tokens), k,
      normalized_maxsim);
}

scoring::SearchMode parse_search_mode(const std::string& text) {
  if (text == "exact") return scoring::SearchMode::kExact;
  if (text == "ann") return scoring::SearchMode::kAnn;
  fail(ErrorCode::kInvalidArgument, "unknown search mode '" + text + "'");
}

}  // namespace docret::cli
