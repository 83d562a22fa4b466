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

#include <httplib.h>
#include <spdlog/spdlog.h>

#include <atomic>
#include <csignal>
#include <iostream>
#include <nlohmann/json.hpp>
#include <thread>

#include "common.hpp"
#include "loaded_index.hpp"

namespace docret::cli {
namespace {

using nlohmann::json;

struct ServeOptions {
  std::filesystem::path index_dir;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::size_t max_k = 1000;
};

struct SearchRequest {
  std::string query;
  std::size_t k = 10;
  scoring::SearchMode mode = scoring::SearchMode::kExact;
};

// Throws std::invalid_argument with a client-facing message.
SearchRequest parse_request(const std::string& body, std::size_t max_k) {
  const json j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw std::invalid_argument("body must be a JSON object");
  SearchRequest r;
  if (!j.contains("query") || !j["query"].is_string() || j["query"].get<std::string>().empty()) {
    throw std::invalid_argument("\"query\" must be a non-empty string");
  }
  r.query = j["query"].get<std::string>();
  if (j.contains("k")) {
    if (!j["k"].is_number_integer() || j["k"].get<long long>() < 1 ||
        j["k"].get<long long>() > static_cast<long long>(max_k)) {
      throw std::invalid_argument("\"k\" must be an integer in [1, " + std::to_string(max_k) + "]");
    }
    r.k = j["k"].get<std::size_t>();
  }
  if (j.contains("mode")) {
    const auto& m = j["mode"];
    if (m == "exact") {
      r.mode = scoring::SearchMode::kExact;
    } else if (m == "ann") {
      r.mode = scoring::SearchMode::kAnn;
    } else {
      throw std::invalid_argument("\"mode\" must be \"exact\" or \"ann\"");
    }
  }
  return r;
}

void reply_error(httplib::Response& res, int status, const std::string& message) {
  res.status = status;
  res.set_content(json{{"error", message}}.dump(), "application/json");
}

int run_serve(const GlobalOptions& g, const ServeOptions& o) {
  const auto dir = output_path(g, o.index_dir, "index");
  if (!std::filesystem::is_directory(dir)) {
    fail(ErrorCode::kIoError, "index dir not found: " + dir.string());
  }
  if (o.port < 0 || o.port > 65535) throw UsageError("--port out of range");

  // Signals go to a dedicated thread; every other thread inherits the mask.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  httplib::Server server;
  const auto threads = g.threads;
  server.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };

  std::shared_ptr<const LoadedIndex> index;
  std::atomic<bool> ready{false};
  std::atomic<bool> failed{false};
  std::string load_error;  // written before `failed` is set

  server.Get("/healthz", [&](const httplib::Request&, httplib::Response& res) {
    if (!ready.load(std::memory_order_acquire)) {
      res.status = 503;
      res.set_content(failed.load(std::memory_order_acquire) ? "failed" : "loading",
                      "text/plain");
      return;
    }
    res.set_content("ok", "text/plain");
  });
  server.Post("/search", [&](const httplib::Request& req, httplib::Response& res) {
    if (!ready.load(std::memory_order_acquire)) {
      reply_error(res, 503, "index loading");
      return;
    }
    SearchRequest r;
    try {
      r = parse_request(req.body, o.max_k);
    } catch (const std::invalid_argument& e) {
      reply_error(res, 400, e.what());
      return;
    }
    try {
      const auto hits = index->search(r.query, r.k, r.mode, std::nullopt, false);
      json results = json::array();
      for (std::size_t i = 0; i < hits.size(); ++i) {
        results.push_back({{"id", hits[i].doc}, {"score", hits[i].score}, {"rank", i + 1}});
      }
      res.set_content(json{{"results", results}}.dump(), "application/json");
    } catch (const Error& e) {
      switch (e.code()) {
        case ErrorCode::kRemoteUnavailable:
          reply_error(res, 502, e.what());
          break;
        case ErrorCode::kAnnUnavailable:
        case ErrorCode::kEmptyText:
        case ErrorCode::kInvalidArgument:
        case ErrorCode::kDimMismatch:
          reply_error(res, 400, e.what());
          break;
        default:
          reply_error(res, 500, e.what());
      }
    } catch (const std::exception& e) {
      reply_error(res, 500, e.what());
    }
  });

  const int port = o.port == 0 ? server.bind_to_any_port(o.host) : o.port;
  if (port < 0 || (o.port != 0 && !server.bind_to_port(o.host, o.port))) {
    fail(ErrorCode::kIoError, "cannot bind " + o.host + ":" + std::to_string(o.port));
  }
  std::cout << "listening on " << o.host << ":" << port << std::endl;

  std::jthread loader([&] {
    try {
      auto loaded = std::make_shared<const LoadedIndex>(LoadedIndex::open(dir));
      spdlog::info("loaded {} docs from {}", loaded->size(), dir.string());
      index = std::move(loaded);
      ready.store(true, std::memory_order_release);
    } catch (const std::exception& e) {
      load_error = e.what();
      spdlog::error("index load failed: {}", e.what());
      failed.store(true, std::memory_order_release);
      server.stop();
    }
  });
  std::atomic<bool> done{false};
  std::jthread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    if (done) return;
    spdlog::info("signal {}, stopping", sig);
    server.stop();
  });

  server.listen_after_bind();
  loader.join();
  // Wake the signal thread if the server stopped for another reason.
  done = true;
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  if (failed) fail(ErrorCode::kParseError, "index load failed: " + load_error);
  return kExitOk;
}

}  // namespace

void register_serve(CLI::App& app, const GlobalOptions& g, Action& action) {
  auto o = std::make_shared<ServeOptions>();
  auto* cmd = app.add_subcommand("serve", "Read-only HTTP search over an index");
  cmd->add_option("--index-dir", o->index_dir, "Index dir (default <output-dir>/index)");
  cmd->add_option("--host", o->host, "Bind address")->capture_default_str();
  cmd->add_option("--port", o->port, "Port; 0 picks a free one")->capture_default_str();
  cmd->add_option("--max-k", o->max_k, "Largest k a request may ask for")->capture_default_str();
  cmd->callback([&g, o, &action] { action = [&g, o] { return run_serve(g, *o); }; });
}

}  // namespace docret::cli
