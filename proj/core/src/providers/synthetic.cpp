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

#include <cctype>
#include <string>
#include <vector>

#include "docret/core/error.hpp"
#include "docret/core/utf8.hpp"
#include "docret/core/vector_math.hpp"
#include "docret/providers/precomputed.hpp"
#include "docret/providers/provider.hpp"
#include "docret/providers/remote.hpp"

namespace docret::providers {
namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string_view require_text(std::string_view text) {
  const auto trimmed = utf8::trim(text);
  if (trimmed.empty()) fail(ErrorCode::kEmptyText, "text is empty");
  return trimmed;
}

std::vector<std::string_view> split_whitespace(std::string_view text) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) words.push_back(text.substr(start, i - start));
  }
  return words;
}

}  // namespace

std::uint64_t seeded_hash(std::string_view bytes, std::uint64_t seed) noexcept {
  std::uint64_t h = kFnvOffset ^ splitmix64(seed);
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return splitmix64(h);
}

void validate(const ProviderKind& kind) {
  if (const auto* s = std::get_if<SyntheticSpec>(&kind)) {
    if (s->dim < 8) {
      fail(ErrorCode::kInvalidArgument,
           "synthetic provider dim must be >= 8, got " + std::to_string(s->dim));
    }
  } else if (const auto* r = std::get_if<RemoteSpec>(&kind)) {
    if (r->timeout_ms < 1) {
      fail(ErrorCode::kInvalidArgument, "remote timeout-ms must be >= 1");
    }
    if (r->max_in_flight < 1) {
      fail(ErrorCode::kInvalidArgument, "remote max-in-flight must be >= 1");
    }
    if (r->base_url.empty()) {
      fail(ErrorCode::kInvalidArgument, "remote base-url is empty");
    }
  }
}

std::unique_ptr<EmbeddingProvider> make_provider(const ProviderKind& kind) {
  validate(kind);
  if (const auto* s = std::get_if<SyntheticSpec>(&kind)) {
    return std::make_unique<SyntheticProvider>(*s);
  }
  if (const auto* p = std::get_if<PrecomputedSpec>(&kind)) {
    return std::make_unique<PrecomputedProvider>(*p);
  }
  return std::make_unique<RemoteProvider>(std::get<RemoteSpec>(kind));
}

SyntheticProvider::SyntheticProvider(SyntheticSpec spec)
    : spec_(spec), kind_(spec) {
  validate(kind_);
}

DenseEmbedding SyntheticProvider::embed_text(std::string_view text) const {
  const auto cps = utf8::decode(require_text(text));
  std::vector<double> buckets(spec_.dim, 0.0);
  const auto hit = [&](std::string_view gram) {
    const std::uint64_t h = seeded_hash(gram, spec_.seed);
    const double sign = (h >> 63) != 0 ? -1.0 : 1.0;
    buckets[h % spec_.dim] += sign;
  };
  if (cps.size() < 3) {
    hit(utf8::encode(cps));
  } else {
    std::string gram;
    for (std::size_t i = 0; i + 3 <= cps.size(); ++i) {
      gram.clear();
      for (std::size_t k = 0; k < 3; ++k) utf8::append(gram, cps[i + k]);
      hit(gram);
    }
  }
  const double n = l2_norm(buckets);
  if (n == 0.0) {
    fail(ErrorCode::kZeroVector, "all n-gram hits cancelled for text");
  }
  std::vector<float> values(spec_.dim);
  for (std::size_t i = 0; i < spec_.dim; ++i) {
    values[i] = static_cast<float>(buckets[i] / n);
  }
  return DenseEmbedding(std::move(values));
}

MultiVectorEmbedding SyntheticProvider::embed_text_multivector(
    std::string_view text, std::size_t max_tokens) const {
  if (max_tokens == 0) {
    fail(ErrorCode::kInvalidArgument, "max_tokens must be >= 1");
  }
  const auto trimmed = require_text(text);
  auto words = split_whitespace(trimmed);
  // Overflow words fold into the last piece so no text is dropped.
  if (words.size() > max_tokens) {
    const auto* tail_begin = words[max_tokens - 1].data();
    words.resize(max_tokens);
    words.back() = std::string_view(
        tail_begin, static_cast<std::size_t>(trimmed.data() + trimmed.size() -
                                             tail_begin));
  }
  std::vector<float> data;
  data.reserve(words.size() * spec_.dim);
  for (const auto w : words) {
    const auto e = embed_text(w);
    data.insert(data.end(), e.values().begin(), e.values().end());
  }
  return MultiVectorEmbedding(words.size(), spec_.dim, std::move(data));
}

}  // namespace docret::providers
