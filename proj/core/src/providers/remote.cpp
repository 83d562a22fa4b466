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

#include "docret/providers/remote.hpp"

#include <httplib.h>

#include <nlohmann/json.hpp>
#include <semaphore>

#include "docret/core/error.hpp"
#include "docret/core/utf8.hpp"

namespace docret::providers {
namespace {

using nlohmann::json;

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string prefix;  // path prefix without trailing '/'
};

SplitUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  const auto path_start =
      url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  SplitUrl out{url, ""};
  if (path_start != std::string::npos) {
    out.origin = url.substr(0, path_start);
    out.prefix = url.substr(path_start);
    while (!out.prefix.empty() && out.prefix.back() == '/') out.prefix.pop_back();
  }
  return out;
}

std::vector<float> to_row(const json& j) {
  if (!j.is_array() || j.empty()) {
    fail(ErrorCode::kRemoteUnavailable, "embedding row is not a non-empty array");
  }
  std::vector<float> row;
  row.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) {
      fail(ErrorCode::kRemoteUnavailable, "embedding value is not a number");
    }
    row.push_back(v.get<float>());
  }
  return row;
}

json parse_reply(const std::string& body, std::size_t expected) {
  json reply = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (reply.is_discarded() || !reply.contains("embeddings") ||
      !reply["embeddings"].is_array() ||
      reply["embeddings"].size() != expected) {
    fail(ErrorCode::kRemoteUnavailable, "malformed /embed reply");
  }
  return reply["embeddings"];
}

}  // namespace

struct RemoteProvider::Gate {
  explicit Gate(std::size_t n) : slots(static_cast<std::ptrdiff_t>(n)) {}
  std::counting_semaphore<> slots;
};

RemoteProvider::RemoteProvider(RemoteSpec spec)
    : spec_(spec), kind_(spec) {
  validate(kind_);
  gate_ = std::make_unique<Gate>(spec_.max_in_flight);
}

RemoteProvider::~RemoteProvider() = default;

std::string RemoteProvider::post_embed(const std::string& body) const {
  const auto url = split_url(spec_.base_url);
  gate_->slots.acquire();
  httplib::Result res;
  {
    httplib::Client client(url.origin);
    const auto sec = spec_.timeout_ms / 1000;
    const auto usec = (spec_.timeout_ms % 1000) * 1000;
    client.set_connection_timeout(sec, usec);
    client.set_read_timeout(sec, usec);
    client.set_write_timeout(sec, usec);
    res = client.Post(url.prefix + "/embed", body, "application/json");
  }
  gate_->slots.release();
  if (!res) {
    fail(ErrorCode::kRemoteUnavailable,
         spec_.base_url + ": " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    fail(ErrorCode::kRemoteUnavailable,
         spec_.base_url + ": HTTP " + std::to_string(res->status));
  }
  return res->body;
}

std::vector<DenseEmbedding> RemoteProvider::embed_batch(
    const std::vector<std::string>& texts) const {
  json inputs = json::array();
  for (const auto& t : texts) {
    if (utf8::trim(t).empty()) fail(ErrorCode::kEmptyText, "text is empty");
    inputs.push_back(t);
  }
  const json request = {{"inputs", inputs}, {"mode", "dense"}};
  const auto rows = parse_reply(post_embed(request.dump()), texts.size());
  std::vector<DenseEmbedding> out;
  out.reserve(texts.size());
  for (const auto& r : rows) {
    const DenseEmbedding e(to_row(r));
    if (e.norm() == 0.0) {
      fail(ErrorCode::kRemoteUnavailable, "service returned a zero vector");
    }
    out.push_back(normalize(e));
  }
  return out;
}

DenseEmbedding RemoteProvider::embed_text(std::string_view text) const {
  return embed_batch({std::string(text)}).front();
}

MultiVectorEmbedding RemoteProvider::embed_text_multivector(
    std::string_view text, std::size_t max_tokens) const {
  if (max_tokens == 0) {
    fail(ErrorCode::kInvalidArgument, "max_tokens must be >= 1");
  }
  if (utf8::trim(text).empty()) fail(ErrorCode::kEmptyText, "text is empty");
  const json request = {{"inputs", json::array({std::string(text)})},
                        {"mode", "multivector"}};
  const auto docs = parse_reply(post_embed(request.dump()), 1);
  const auto& tokens = docs.front();
  if (!tokens.is_array() || tokens.empty()) {
    fail(ErrorCode::kRemoteUnavailable, "multivector reply has no tokens");
  }
  std::vector<std::vector<float>> rows;
  for (const auto& t : tokens) {
    if (rows.size() == max_tokens) break;
    rows.push_back(to_row(t));
  }
  try {
    return normalize_rows(MultiVectorEmbedding::from_rows(rows));
  } catch (const Error& e) {
    fail(ErrorCode::kRemoteUnavailable, e.what());
  }
}

}  // namespace docret::providers
