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

#include <CLI11.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

#include "docret/core/error.hpp"
#include "docret/providers/provider.hpp"

namespace docret::cli {

struct GlobalOptions {
  std::uint64_t seed = 42;
  std::size_t threads = 1;
  std::filesystem::path output_dir = ".";
  std::string log_level = "info";
};

/// Bad flags or flag combinations; exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitInternal = 3;

using Action = std::function<int()>;

/// Runs a library validation step, reporting its failure as a usage error.
template <typename Fn>
void check_flags(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

struct ProviderOptions {
  std::string kind = "synthetic";
  std::size_t dim = 64;
  std::filesystem::path embeddings;
  std::string remote_url;
  int timeout_ms = 30000;
  std::size_t max_in_flight = 8;
};

void add_provider_options(CLI::App& cmd, ProviderOptions& opts);
providers::ProviderKind provider_kind(const ProviderOptions& opts,
                                      std::uint64_t seed);

/// Contents of `provider.json` in an index directory: how queries against
/// the index get embedded.
struct IndexProvider {
  providers::ProviderKind kind;
  bool multivector = false;
  std::size_t query_tokens = 32;
};

void save_index_provider(const std::filesystem::path& dir,
                         const IndexProvider& p);
IndexProvider load_index_provider(const std::filesystem::path& dir);

/// Creates the directory (and parents); kIoError on failure.
void ensure_dir(const std::filesystem::path& dir);
void write_text_file(const std::filesystem::path& path,
                     const std::string& text);

/// `path` when given, otherwise `fallback` under the output directory.
std::filesystem::path output_path(const GlobalOptions& g,
                                  const std::filesystem::path& path,
                                  const std::string& fallback);

void register_index(CLI::App& app, const GlobalOptions& g, Action& action);
void register_search(CLI::App& app, const GlobalOptions& g, Action& action);
void register_eval(CLI::App& app, const GlobalOptions& g, Action& action);
void register_compare(CLI::App& app, const GlobalOptions& g, Action& action);
void register_mine(CLI::App& app, const GlobalOptions& g, Action& action);
void register_merge(CLI::App& app, const GlobalOptions& g, Action& action);
void register_analyze(CLI::App& app, const GlobalOptions& g, Action& action);
void register_loss_check(CLI::App& app, const GlobalOptions& g, Action& action);
void register_serve(CLI::App& app, const GlobalOptions& g, Action& action);

}  // namespace docret::cli
