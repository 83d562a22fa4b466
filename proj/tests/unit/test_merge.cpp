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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "docret/core/binary_io.hpp"
#include "docret/merge/checkpoint.hpp"
#include "docret/merge/merge.hpp"
#include "support.hpp"

namespace docret::merge {
namespace {

using testing::code_of;

CheckpointTensors random_ckpt(std::mt19937_64& rng) {
  std::normal_distribution<float> n(0.0f, 1.0f);
  CheckpointTensors c;
  for (const auto& [name, shape] :
       std::vector<std::pair<std::string, std::vector<std::size_t>>>{
           {"layer.0.weight", {4, 3}}, {"layer.0.bias", {3}}, {"head", {2, 2, 2}}}) {
    Tensor t{shape, {}};
    for (std::size_t i = 0; i < t.numel(); ++i) t.data.push_back(n(rng));
    c[name] = t;
  }
  return c;
}

double norm(const std::vector<float>& v) {
  double s = 0.0;
  for (const float x : v) s += double(x) * x;
  return std::sqrt(s);
}

TEST(Checkpoint, SingleTensorLoads) {
  CheckpointTensors c{{"w", Tensor{{2, 2}, {1, 2, 3, 4}}}};
  const auto back = parse_checkpoint(serialize_checkpoint(c));
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back.at("w").data.size(), 4u);
  EXPECT_EQ(back, c);
}

TEST(Checkpoint, RoundTripIsBitIdentical) {
  std::mt19937_64 rng(1);
  const auto c = random_ckpt(rng);
  testing::TempDir dir;
  save_checkpoint(c, dir / "a.ckpt");
  const auto back = load_checkpoint(dir / "a.ckpt");
  EXPECT_EQ(back, c);
  save_checkpoint(back, dir / "b.ckpt");
  EXPECT_EQ(binary::read_file(dir / "a.ckpt"), binary::read_file(dir / "b.ckpt"));
}

std::string with_header(const std::string& header, const std::string& data) {
  std::string out = "M3DRTNSR";
  for (int i = 0; i < 8; ++i) out.push_back(char((header.size() >> (8 * i)) & 0xFF));
  return out + header + data;
}

TEST(Checkpoint, Corruptions) {
  EXPECT_EQ(code_of([] { parse_checkpoint("NOTMAGIC........"); }), ErrorCode::kBadMagic);
  EXPECT_EQ(code_of([] { parse_checkpoint("M3D"); }), ErrorCode::kBadMagic);
  EXPECT_EQ(code_of([] { parse_checkpoint(with_header("{oops", "")); }),
            ErrorCode::kCorruptHeader);
  EXPECT_EQ(code_of([] {
              parse_checkpoint(with_header(
                  R"({"w":{"dtype":"f16","shape":[1],"offset":0,"length":4}})", "xxxx"));
            }),
            ErrorCode::kCorruptHeader);
  EXPECT_EQ(code_of([] {
              parse_checkpoint(with_header(
                  R"({"w":{"dtype":"f32","shape":[2],"offset":0,"length":4}})", "xxxx"));
            }),
            ErrorCode::kCorruptHeader);
  EXPECT_EQ(code_of([] {
              parse_checkpoint(with_header(
                  R"({"w":{"dtype":"f32","shape":[1],"offset":8,"length":4}})", "xxxx"));
            }),
            ErrorCode::kTruncatedData);
  std::string header_past_end = "M3DRTNSR";
  header_past_end += std::string("\xFF\x00\x00\x00\x00\x00\x00\x00", 8);
  EXPECT_EQ(code_of([&] { parse_checkpoint(header_past_end + "{}"); }),
            ErrorCode::kTruncatedData);
  EXPECT_EQ(code_of([] {
              parse_checkpoint(with_header(
                  R"({"a":{"dtype":"f32","shape":[2],"offset":0,"length":8},)"
                  R"("b":{"dtype":"f32","shape":[1],"offset":4,"length":4}})",
                  "xxxxxxxx"));
            }),
            ErrorCode::kCorruptHeader);
}

TEST(Linear, Endpoints) {
  std::mt19937_64 rng(2);
  const auto a = random_ckpt(rng);
  const auto b = random_ckpt(rng);
  EXPECT_EQ(merge_linear(a, b, 1.0), a);
  EXPECT_EQ(merge_linear(a, b, 0.0), b);
}

TEST(Linear, HalfOfZeroAndDouble) {
  CheckpointTensors zero{{"w", Tensor{{3}, {0, 0, 0}}}};
  CheckpointTensors twice{{"w", Tensor{{3}, {2, -4, 6}}}};
  EXPECT_EQ(merge_linear(zero, twice, 0.5).at("w").data, (std::vector<float>{1, -2, 3}));
}

TEST(Linear, SwapSymmetryIsExact) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const auto a = random_ckpt(rng);
    const auto b = random_ckpt(rng);
    const double alpha = u(rng);
    EXPECT_EQ(merge_linear(a, b, alpha), merge_linear(b, a, 1.0 - alpha)) << alpha;
  }
}

TEST(Linear, SchemaMismatch) {
  std::mt19937_64 rng(4);
  const auto a = random_ckpt(rng);
  auto b = a;
  b.erase("head");
  EXPECT_EQ(code_of([&] { merge_linear(a, b, 0.5); }), ErrorCode::kSchemaMismatch);
  b = a;
  b["head"].shape = {4, 2};
  EXPECT_EQ(code_of([&] { merge_linear(a, b, 0.5); }), ErrorCode::kSchemaMismatch);
  EXPECT_EQ(code_of([&] { merge_linear(a, a, 1.5); }), ErrorCode::kInvalidArgument);
}

TEST(Slerp, AlphaZeroIsA) {
  std::mt19937_64 rng(5);
  const auto a = random_ckpt(rng);
  const auto b = random_ckpt(rng);
  const auto m = merge_slerp(a, b, 0.0);
  for (const auto& [name, t] : a) {
    for (std::size_t i = 0; i < t.data.size(); ++i) {
      EXPECT_NEAR(m.at(name).data[i], t.data[i], 1e-6);
    }
  }
}

TEST(Slerp, OrthogonalUnitMidpoint) {
  CheckpointTensors a{{"w", Tensor{{2}, {1, 0}}}};
  CheckpointTensors b{{"w", Tensor{{2}, {0, 1}}}};
  const auto m = merge_slerp(a, b, 0.5).at("w").data;
  EXPECT_NEAR(m[0], std::sqrt(2.0) / 2.0, 1e-6);
  EXPECT_NEAR(m[1], std::sqrt(2.0) / 2.0, 1e-6);
  EXPECT_NEAR(norm(m), 1.0, 1e-6);
}

TEST(Slerp, IdenticalInputsReturnA) {
  std::mt19937_64 rng(6);
  const auto a = random_ckpt(rng);
  for (const double alpha : {0.0, 0.3, 0.5, 1.0}) {
    const auto m = merge_slerp(a, a, alpha);
    for (const auto& [name, t] : a) {
      for (std::size_t i = 0; i < t.data.size(); ++i) {
        EXPECT_NEAR(m.at(name).data[i], t.data[i], 1e-6);
      }
    }
  }
}

TEST(Slerp, NormInterpolatesAndStaysInSpan) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    auto a = random_ckpt(rng);
    const auto b = random_ckpt(rng);
    for (auto& x : a["head"].data) x *= 3.0f;
    const double alpha = u(rng);
    const auto m = merge_slerp(a, b, alpha);
    for (const auto& [name, ta] : a) {
      const auto& tb = b.at(name).data;
      const auto& tm = m.at(name).data;
      const double expected = (1 - alpha) * norm(ta.data) + alpha * norm(tb);
      EXPECT_NEAR(norm(tm) / expected, 1.0, 1e-5);
      // Residual of tm after least-squares projection onto span{a, b}.
      double aa = 0, ab = 0, bb = 0, am = 0, bm = 0;
      for (std::size_t i = 0; i < tm.size(); ++i) {
        aa += double(ta.data[i]) * ta.data[i];
        ab += double(ta.data[i]) * tb[i];
        bb += double(tb[i]) * tb[i];
        am += double(ta.data[i]) * tm[i];
        bm += double(tb[i]) * tm[i];
      }
      const double det = aa * bb - ab * ab;
      const double ca = (am * bb - bm * ab) / det;
      const double cb = (bm * aa - am * ab) / det;
      double resid = 0.0;
      for (std::size_t i = 0; i < tm.size(); ++i) {
        const double r = tm[i] - ca * ta.data[i] - cb * tb[i];
        resid += r * r;
      }
      EXPECT_LE(std::sqrt(resid) / norm(tm), 1e-5);
    }
  }
}

TEST(Slerp, KeepAMagnitude) {
  CheckpointTensors a{{"w", Tensor{{2}, {3, 0}}}};
  CheckpointTensors b{{"w", Tensor{{2}, {0, 1}}}};
  const auto m = merge_slerp(a, b, 0.5, 1e-7, MagnitudeMode::kKeepA).at("w").data;
  EXPECT_NEAR(norm(m), 3.0, 1e-6);
}

TEST(Slerp, AntiparallelFallsBackToLinear) {
  CheckpointTensors a{{"w", Tensor{{2}, {1, 0}}}};
  CheckpointTensors b{{"w", Tensor{{2}, {-1, 0}}}};
  EXPECT_EQ(merge_slerp(a, b, 0.0).at("w").data, a.at("w").data);
  EXPECT_EQ(merge_slerp(a, b, 1.0).at("w").data, b.at("w").data);
}

TEST(Slerp, ZeroTensorRejected) {
  CheckpointTensors a{{"w", Tensor{{2}, {0, 0}}}};
  CheckpointTensors b{{"w", Tensor{{2}, {0, 1}}}};
  EXPECT_EQ(code_of([&] { merge_slerp(a, b, 0.5); }), ErrorCode::kZeroTensor);
}

TEST(Merge, NameOrderAndThreadsDoNotMatter) {
  std::mt19937_64 rng(8);
  const auto a = random_ckpt(rng);
  const auto b = random_ckpt(rng);
  MergeConfig c;
  const auto one = merge(a, b, c);
  c.threads = 3;
  EXPECT_EQ(merge(a, b, c), one);
  EXPECT_EQ(parse_merge_method("linear"), MergeMethod::kLinear);
  EXPECT_EQ(code_of([] { parse_merge_method("ties"); }), ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace docret::merge
