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

#include "docret/merge/checkpoint.hpp"

#include <algorithm>
#include <limits>
#include <nlohmann/json.hpp>
#include <sstream>

#include "docret/core/binary_io.hpp"
#include "docret/core/error.hpp"

namespace docret::merge {
namespace {

using nlohmann::json;

constexpr std::string_view kMagic = "M3DRTNSR";

std::size_t shape_product(const std::vector<std::size_t>& shape) {
  std::size_t n = 1;
  for (const auto s : shape) {
    if (s != 0 && n > std::numeric_limits<std::size_t>::max() / s) {
      fail(ErrorCode::kCorruptHeader, "tensor shape overflows");
    }
    n *= s;
  }
  return n;
}

struct Entry {
  std::string name;
  std::vector<std::size_t> shape;
  std::uint64_t offset = 0;
  std::uint64_t length = 0;
};

Entry parse_entry(const std::string& name, const json& j,
                  const std::string& src) {
  const auto bad = [&](const std::string& why) {
    fail(ErrorCode::kCorruptHeader, src + ": tensor '" + name + "': " + why);
  };
  if (!j.is_object()) bad("entry is not an object");
  if (!j.contains("dtype") || j["dtype"] != "f32") bad("dtype must be \"f32\"");
  for (const char* key : {"shape", "offset", "length"}) {
    if (!j.contains(key)) bad(std::string("missing ") + key);
  }
  Entry e{name, {}, 0, 0};
  if (!j["shape"].is_array() || j["shape"].empty()) bad("shape must be a non-empty list");
  for (const auto& s : j["shape"]) {
    if (!s.is_number_unsigned() || s.get<std::uint64_t>() == 0) {
      bad("shape entries must be positive integers");
    }
    e.shape.push_back(s.get<std::size_t>());
  }
  if (!j["offset"].is_number_unsigned() || !j["length"].is_number_unsigned()) {
    bad("offset and length must be non-negative integers");
  }
  e.offset = j["offset"].get<std::uint64_t>();
  e.length = j["length"].get<std::uint64_t>();
  const auto numel = shape_product(e.shape);
  if (numel > std::numeric_limits<std::uint64_t>::max() / 4 ||
      e.length != numel * 4) {
    bad("byte length disagrees with shape");
  }
  return e;
}

}  // namespace

std::size_t Tensor::numel() const noexcept {
  std::size_t n = 1;
  for (const auto s : shape) n *= s;
  return n;
}

void validate(const CheckpointTensors& ckpt) {
  for (const auto& [name, t] : ckpt) {
    if (name.empty()) fail(ErrorCode::kInvalidArgument, "empty tensor name");
    if (t.shape.empty() ||
        std::any_of(t.shape.begin(), t.shape.end(), [](auto s) { return s == 0; })) {
      fail(ErrorCode::kInvalidArgument, "tensor '" + name + "' has a bad shape");
    }
    if (t.data.size() != t.numel()) {
      fail(ErrorCode::kInvalidArgument,
           "tensor '" + name + "' holds " + std::to_string(t.data.size()) +
               " values for " + std::to_string(t.numel()) + " elements");
    }
  }
}

std::string serialize_checkpoint(const CheckpointTensors& ckpt) {
  validate(ckpt);
  json header = json::object();
  std::uint64_t offset = 0;
  for (const auto& [name, t] : ckpt) {
    const std::uint64_t length = t.data.size() * 4;
    header[name] = {{"dtype", "f32"},
                    {"shape", t.shape},
                    {"offset", offset},
                    {"length", length}};
    offset += length;
  }
  const auto text = header.dump();
  std::ostringstream out(std::ios::binary);
  out.write(kMagic.data(), kMagic.size());
  binary::write_u64(out, text.size());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  for (const auto& [name, t] : ckpt) binary::write_f32s(out, t.data);
  return out.str();
}

CheckpointTensors parse_checkpoint(std::string_view bytes,
                                   std::string_view source) {
  const std::string src(source);
  if (bytes.size() < kMagic.size() || bytes.substr(0, kMagic.size()) != kMagic) {
    fail(ErrorCode::kBadMagic, src + ": not a checkpoint container");
  }
  std::istringstream in(std::string(bytes.substr(kMagic.size())), std::ios::binary);
  const auto header_len = binary::read_u64(in, src + " header length");
  const auto after_len = kMagic.size() + 8;
  if (header_len > bytes.size() - after_len) {
    fail(ErrorCode::kTruncatedData, src + ": header runs past end of file");
  }
  const json header =
      json::parse(bytes.substr(after_len, header_len), nullptr, false);
  if (header.is_discarded() || !header.is_object()) {
    fail(ErrorCode::kCorruptHeader, src + ": header is not a JSON object");
  }
  const auto data = bytes.substr(after_len + header_len);

  std::vector<Entry> entries;
  for (const auto& [name, j] : header.items()) {
    if (name.empty()) fail(ErrorCode::kCorruptHeader, src + ": empty tensor name");
    entries.push_back(parse_entry(name, j, src));
  }
  for (const auto& e : entries) {
    if (e.offset > data.size() || e.length > data.size() - e.offset) {
      fail(ErrorCode::kTruncatedData,
           src + ": tensor '" + e.name + "' extends past end of data");
    }
  }
  auto by_offset = entries;
  std::sort(by_offset.begin(), by_offset.end(),
            [](const Entry& x, const Entry& y) { return x.offset < y.offset; });
  for (std::size_t i = 1; i < by_offset.size(); ++i) {
    const auto& prev = by_offset[i - 1];
    if (prev.offset + prev.length > by_offset[i].offset) {
      fail(ErrorCode::kCorruptHeader, src + ": tensors '" + prev.name +
                                          "' and '" + by_offset[i].name +
                                          "' overlap");
    }
  }

  CheckpointTensors ckpt;
  for (const auto& e : entries) {
    std::istringstream region(std::string(data.substr(e.offset, e.length)),
                              std::ios::binary);
    ckpt[e.name] = Tensor{e.shape, binary::read_f32s(region, e.length / 4, e.name)};
  }
  return ckpt;
}

CheckpointTensors load_checkpoint(const std::filesystem::path& path) {
  return parse_checkpoint(binary::read_file(path), path.string());
}

void save_checkpoint(const CheckpointTensors& ckpt,
                     const std::filesystem::path& path) {
  binary::write_file(path, serialize_checkpoint(ckpt));
}

}  // namespace docret::merge
