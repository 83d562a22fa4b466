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

#include "docret/eval/dataset.hpp"

#include <charconv>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "docret/core/error.hpp"
#include "docret/core/utf8.hpp"

namespace docret::eval {
namespace {

using nlohmann::json;

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path.string());
  return in;
}

std::string where(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line);
}

std::string string_field(const json& j, const char* key, bool required,
                         const std::string& loc) {
  if (!j.contains(key)) {
    if (required) fail(ErrorCode::kParseError, loc + ": missing \"" + key + "\"");
    return {};
  }
  if (!j[key].is_string()) {
    fail(ErrorCode::kParseError, loc + ": \"" + key + "\" must be a string");
  }
  return j[key].get<std::string>();
}

// Calls fn(object, loc) for every non-blank JSONL line.
template <typename Fn>
void for_each_jsonl(const std::filesystem::path& path, Fn&& fn) {
  auto in = open_in(path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (utf8::trim(line).empty()) continue;
    const auto loc = where(path, line_no);
    const json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      fail(ErrorCode::kParseError, loc + ": not a JSON object");
    }
    fn(j, loc);
  }
}

int parse_grade(std::string_view field, const std::string& loc) {
  int g = 0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, g);
  if (field.empty() || ec != std::errc() || ptr != end) {
    fail(ErrorCode::kParseError, loc + ": bad grade '" + std::string(field) + "'");
  }
  if (g < 0 || g > 2) {
    fail(ErrorCode::kParseError,
         loc + ": grade " + std::to_string(g) + " out of range {0, 1, 2}");
  }
  return g;
}

QrelSet read_qrels(const std::filesystem::path& path) {
  auto in = open_in(path);
  QrelSet qrels;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (utf8::trim(line).empty()) continue;
    const auto loc = where(path, line_no);
    if (!header_seen) {
      header_seen = true;
      if (!line.starts_with("query-id")) {
        fail(ErrorCode::kParseError,
             loc + ": expected header query-id, corpus-id, score");
      }
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, '\t')) f.push_back(field);
    if (f.size() != 3 || f[0].empty() || f[1].empty()) {
      fail(ErrorCode::kParseError, loc + ": expected 3 tab-separated fields");
    }
    const int g = parse_grade(f[2], loc);
    if (!qrels[f[0]].emplace(f[1], g).second) {
      fail(ErrorCode::kDuplicateId,
           loc + ": repeated judgment " + f[0] + " / " + f[1]);
    }
  }
  return qrels;
}

}  // namespace

int grade_of(const QrelSet& qrels, const QueryId& q, const DocId& d) {
  const auto qi = qrels.find(q);
  if (qi == qrels.end()) return 0;
  const auto di = qi->second.find(d);
  return di == qi->second.end() ? 0 : di->second;
}

std::size_t positive_count(const QrelSet& qrels, const QueryId& q) {
  const auto qi = qrels.find(q);
  if (qi == qrels.end()) return 0;
  std::size_t n = 0;
  for (const auto& [doc, g] : qi->second) n += g > 0 ? 1 : 0;
  return n;
}

std::size_t judgment_count(const QrelSet& qrels) {
  std::size_t n = 0;
  for (const auto& [q, docs] : qrels) n += docs.size();
  return n;
}

void validate(const BenchmarkDataset& dataset) {
  std::set<std::string> bad_queries;
  std::set<std::string> bad_docs;
  bool any_positive = false;
  for (const auto& [q, docs] : dataset.qrels) {
    if (!dataset.queries.contains(q)) bad_queries.insert(q);
    for (const auto& [d, g] : docs) {
      if (!dataset.corpus.contains(d)) bad_docs.insert(d);
      any_positive = any_positive || g > 0;
    }
  }
  if (!bad_queries.empty() || !bad_docs.empty()) {
    std::string msg = "qrels reference unknown ids;";
    if (!bad_queries.empty()) {
      msg += " queries:";
      for (const auto& q : bad_queries) msg += " " + q;
    }
    if (!bad_docs.empty()) {
      msg += " docs:";
      for (const auto& d : bad_docs) msg += " " + d;
    }
    fail(ErrorCode::kDanglingReference, msg);
  }
  if (!any_positive) {
    fail(ErrorCode::kParseError, "qrels contain no positive judgment");
  }
}

std::map<DocId, CorpusDoc> load_corpus(const std::filesystem::path& path) {
  std::map<DocId, CorpusDoc> corpus;
  for_each_jsonl(path, [&](const json& j, const std::string& loc) {
    const auto id = string_field(j, "_id", true, loc);
    CorpusDoc doc{string_field(j, "title", false, loc),
                  string_field(j, "text", false, loc), std::nullopt};
    if (j.contains("image_path")) {
      doc.image_path = string_field(j, "image_path", true, loc);
    }
    if (id.empty()) fail(ErrorCode::kParseError, loc + ": empty _id");
    if (!corpus.emplace(id, std::move(doc)).second) {
      fail(ErrorCode::kDuplicateId, loc + ": duplicate doc id '" + id + "'");
    }
  });
  return corpus;
}

BenchmarkDataset load_beir(const std::filesystem::path& dir) {
  BenchmarkDataset ds;
  ds.corpus = load_corpus(dir / "corpus.jsonl");
  for_each_jsonl(dir / "queries.jsonl", [&](const json& j, const std::string& loc) {
    const auto id = string_field(j, "_id", true, loc);
    if (id.empty()) fail(ErrorCode::kParseError, loc + ": empty _id");
    if (!ds.queries.emplace(id, string_field(j, "text", true, loc)).second) {
      fail(ErrorCode::kDuplicateId, loc + ": duplicate query id '" + id + "'");
    }
  });
  ds.qrels = read_qrels(dir / "qrels" / "test.tsv");
  validate(ds);
  return ds;
}

void save_beir(const BenchmarkDataset& dataset,
               const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "qrels");
  const auto open_out = [](const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) fail(ErrorCode::kIoError, "cannot write " + p.string());
    return out;
  };
  {
    auto out = open_out(dir / "corpus.jsonl");
    for (const auto& [id, doc] : dataset.corpus) {
      json j = {{"_id", id}, {"title", doc.title}, {"text", doc.text}};
      if (doc.image_path) j["image_path"] = *doc.image_path;
      out << j.dump() << '\n';
    }
  }
  {
    auto out = open_out(dir / "queries.jsonl");
    for (const auto& [id, text] : dataset.queries) {
      out << json{{"_id", id}, {"text", text}}.dump() << '\n';
    }
  }
  auto out = open_out(dir / "qrels" / "test.tsv");
  out << "query-id\tcorpus-id\tscore\n";
  for (const auto& [q, docs] : dataset.qrels) {
    for (const auto& [d, g] : docs) out << q << '\t' << d << '\t' << g << '\n';
  }
}

}  // namespace docret::eval
