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

#include <fmt/format.h>

#include <iostream>

#include "common.hpp"
#include "docret/losses/gradient_check.hpp"

namespace docret::cli {
namespace {

struct LossCheckOptions {
  std::size_t trials = 20;
  double tau = 0.02;
  double step = 1e-5;
  double tolerance = 1e-4;
};

int run_loss_check(const GlobalOptions& g, const LossCheckOptions& o) {
  if (o.trials == 0) throw UsageError("--trials must be positive");
  if (!(o.tau > 0.0) || !(o.step > 0.0)) throw UsageError("--tau and --step must be positive");
  const auto results = losses::check_all_gradients(o.trials, g.seed, o.tau, o.step);
  double worst = 0.0;
  for (const auto& r : results) {
    worst = std::max(worst, r.max_relative_error);
    std::cout << fmt::format("{}\t{} trials\tmax relative error {:.3e}\t{}\n",
                             losses::loss_kind_name(r.kind), r.trials,
                             r.max_relative_error,
                             r.max_relative_error <= o.tolerance ? "ok" : "FAIL");
  }
  std::cout << fmt::format("max relative error {:.3e} (tolerance {:.0e})\n", worst, o.tolerance);
  // An analytic gradient that disagrees with finite differences is a bug in
  // this program, not in the caller's input.
  return worst <= o.tolerance ? kExitOk : kExitInternal;
}

}  // namespace

void register_loss_check(CLI::App& app, const GlobalOptions& g, Action& action) {
  auto o = std::make_shared<LossCheckOptions>();
  auto* cmd = app.add_subcommand("loss-check", "Finite-difference check of every loss gradient");
  cmd->add_option("--trials", o->trials, "Random batches per loss")->capture_default_str();
  cmd->add_option("--tau", o->tau, "Temperature")->capture_default_str();
  cmd->add_option("--step", o->step, "Central-difference step")->capture_default_str();
  cmd->add_option("--tolerance", o->tolerance, "Max relative error accepted")
      ->capture_default_str();
  cmd->callback([&g, o, &action] { action = [&g, o] { return run_loss_check(g, *o); }; });
}

}  // namespace docret::cli
