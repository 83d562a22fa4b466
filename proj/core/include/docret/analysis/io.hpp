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

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "docret/analysis/heatmap.hpp"
#include "docret/analysis/pca.hpp"

namespace docret::analysis {

/// TSV `id <TAB> language <TAB> role`, keyed by id.
std::map<std::string, PointLabel> read_labels(const std::filesystem::path& path);

/// CSV `x,y,language,role,checkpoint` with a header row.
void write_projection_csv(const std::filesystem::path& path,
                          const Projection2D& projection,
                          const std::string& checkpoint);

/// `{checkpoint: [ratio1, ratio2]}`.
void write_variance_json(
    const std::filesystem::path& path,
    const std::map<std::string, std::array<double, 2>>& ratios);

/// `token_<i>.csv` (`row,col,value`) per query token and `summary.json`
/// with per-token maxima, argmax cells and the total MaxSim.
void write_heatmaps(const std::filesystem::path& dir,
                    const std::vector<HeatmapGrid>& grids);

}  // namespace docret::analysis
