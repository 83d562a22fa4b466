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

#include "common.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace docret::cli {

using nlohmann::json;

void add_provider_options(CLI::App& cmd, ProviderOptions& opts) {
  cmd.add_option("--provider", opts.kind, "Embedding provider")
      ->check(CLI::IsMember({"synthetic", "precomputed", "remote"}))
      ->capture_default_str();
  cmd.add_option("--dim", opts.dim, "Synthetic embedding dimension")
      ->capture_default_str();
  cmd.add_option("--embeddings", opts.embeddings,
                 "Precomputed embedding file (precomputed provider)");
  cmd.add_option("--remote-url", opts.remote_url,
                 "Embedding service base URL (remote provider)");
  cmd.add_option("--timeout-ms", opts.timeout_ms, "Remote request timeout")
      ->capture_default_str();
  cmd.add_option("--max-in-flight", opts.max_in_flight,
                 "Concurrent remote requests")
      ->capture_default_str();
}

providers::ProviderKind provider_kind(const ProviderOptions& opts,
                                      std::uint64_t seed) {
  providers::ProviderKind kind;
  if (opts.kind == "synthetic") {
    kind = providers::SyntheticSpec{seed, opts.dim};
  } else if (opts.kind == "precomputed") {
    if (opts.embeddings.empty()) {
      throw UsageError("--provider precomputed needs --embeddings");
    }
    // Absolute so provider.json stays valid from any working directory.
    kind = providers::PrecomputedSpec{std::filesystem::absolute(opts.embeddings)};
  } else {
    if (opts.remote_url.empty()) {
      throw UsageError("--provider remote needs --remote-url");
    }
    kind = providers::RemoteSpec{opts.remote_url, opts.timeout_ms,
                                 opts.max_in_flight};
  }
  check_flags([&] { providers::validate(kind); });
  return kind;
}

namespace {

json kind_to_json(const providers::ProviderKind& kind) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, providers::SyntheticSpec>) {
          return {{"kind", "synthetic"}, {"seed", s.seed}, {"dim", s.dim}};
        } else if constexpr (std::is_same_v<T, providers::PrecomputedSpec>) {
          return {{"kind", "precomputed"}, {"path", s.path.string()}};
        } else {
          return {{"kind", "remote"},
                  {"base_url", s.base_url},
                  {"timeout_ms", s.timeout_ms},
                  {"max_in_flight", s.max_in_flight}};
        }
      },
      kind);
}

providers::ProviderKind kind_from_json(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "synthetic") {
    return providers::SyntheticSpec{j.at("seed").get<std::uint64_t>(),
                                    j.at("dim").get<std::size_t>()};
  }
  if (kind == "precomputed") {
    return providers::PrecomputedSpec{j.at("path").get<std::string>()};
  }
  if (kind == "remote") {
    return providers::RemoteSpec{j.at("base_url").get<std::string>(),
                                 j.at("timeout_ms").get<int>(),
                                 j.at("max_in_flight").get<std::size_t>()};
  }
  fail(ErrorCode::kParseError, "unknown provider kind '" + kind + "'");
}

}  // namespace

void save_index_provider(const std::filesystem::path& dir,
                         const IndexProvider& p) {
  const json j{{"provider", kind_to_json(p.kind)},
               {"multivector", p.multivector},
               {"query_tokens", p.query_tokens}};
  write_text_file(dir / "provider.json", j.dump(2) + "\n");
}

IndexProvider load_index_provider(const std::filesystem::path& dir) {
  const auto path = dir / "provider.json";
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path.string());
  const json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    fail(ErrorCode::kParseError, path.string() + ": not a JSON object");
  }
  try {
    IndexProvider p{kind_from_json(j.at("provider")),
                    j.at("multivector").get<bool>(),
                    j.at("query_tokens").get<std::size_t>()};
    providers::validate(p.kind);
    return p;
  } catch (const json::exception& e) {
    fail(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::kIoError, "cannot create " + dir.string() + ": " + ec.message());
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  if (path.has_parent_path()) ensure_dir(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) fail(ErrorCode::kIoError, "cannot write " + path.string());
}

std::filesystem::path output_path(const GlobalOptions& g,
                                  const std::filesystem::path& path,
                                  const std::string& fallback) {
  return path.empty() ? g.output_dir / fallback : path;
}

}  // namespace docret::cli
