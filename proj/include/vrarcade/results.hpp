// SPDX-License-Identifier: Apache-2.0
//
// vrarcade: latency and reliability simulator for wireless VR arcades
// Copyright (C) 2026 The vrarcade Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef VRARCADE_RESULTS_HPP
#define VRARCADE_RESULTS_HPP

#include "vrarcade/config.hpp"
#include "vrarcade/metrics.hpp"

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace vrarcade
{

inline constexpr std::array<std::string_view, 15> result_columns{
    "scheme",      "n_players",    "cache_capacity", "action_intensity", "d_th_ms",
    "mean_total_ms", "mean_comp_ms", "mean_comm_ms",  "p99_comm_ms",      "reliability",
    "mean_rate_gbps", "hd_success", "me_ms",          "n_replications",   "seed"};

struct ResultRow
{
    Scheme scheme = Scheme::Proposed;
    int n_players = 0;
    int cache_capacity = 0;
    double action_intensity = 0.0;
    double d_th_ms = 0.0;
    engine::MetricsSummary summary;
    int n_replications = 0;
    std::uint64_t seed = 0;
};

ResultRow make_row(const ScenarioConfig &cfg, const engine::MetricsSummary &summary);

std::string csv_header();
std::string format_row(const ResultRow &row);

// Appends rows, writing the header first when the file is new or empty.
// Throws std::runtime_error when the file cannot be written.
void append_results(const std::filesystem::path &path, const std::vector<ResultRow> &rows);

} // namespace vrarcade

#endif
