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

#include <spdlog/spdlog.h>

#include "common.hpp"
#include "docret/merge/checkpoint.hpp"
#include "docret/merge/merge.hpp"

namespace docret::cli {
namespace {

struct MergeOptions {
  std::filesystem::path a;
  std::filesystem::path b;
  std::filesystem::path out;
  std::string method = "slerp";
  std::string magnitude = "interpolate";
  double alpha = 0.5;
  double threshold = 1e-7;
};

int run_merge(const GlobalOptions& g, const MergeOptions& o) {
  merge::MergeConfig config;
  check_flags([&] {
    config.method = merge::parse_merge_method(o.method);
    config.magnitude = merge::parse_magnitude_mode(o.magnitude);
    config.alpha = o.alpha;
    config.parallel_threshold = o.threshold;
    config.threads = g.threads;
    config.validate();
  });
  const auto a = merge::load_checkpoint(o.a);
  const auto b = merge::load_checkpoint(o.b);
  const auto merged = merge::merge(a, b, config);
  const auto path = output_path(g, o.out, "merged.ckpt");
  if (path.has_parent_path()) ensure_dir(path.parent_path());
  merge::save_checkpoint(merged, path);
  spdlog::info("{} merge of {} tensors at alpha {} -> {}", o.method, merged.size(),
               o.alpha, path.string());
  return kExitOk;
}

}  // namespace

void register_merge(CLI::App& app, const GlobalOptions& g, Action& action) {
  auto o = std::make_shared<MergeOptions>();
  auto* cmd = app.add_subcommand("merge", "Interpolate two checkpoints with one schema");
  cmd->add_option("a", o->a, "First checkpoint")->required();
  cmd->add_option("b", o->b, "Second checkpoint")->required();
  cmd->add_option("--method", o->method, "linear|slerp")->capture_default_str();
  cmd->add_option("--alpha", o->alpha,
                  "linear: weight on a; slerp: position along a->b")
      ->capture_default_str();
  cmd->add_option("--magnitude", o->magnitude, "interpolate|keep-a (slerp)")
      ->capture_default_str();
  cmd->add_option("--parallel-threshold", o->threshold,
                  "sin(angle) below which slerp falls back to linear")
      ->capture_default_str();
  cmd->add_option("--out", o->out, "Output container (default <output-dir>/merged.ckpt)");
  cmd->callback([&g, o, &action] { action = [&g, o] { return run_merge(g, *o); }; });
}

}  // namespace docret::cli
