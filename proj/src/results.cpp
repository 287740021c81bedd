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

#include "vrarcade/results.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace vrarcade
{

ResultRow make_row(const ScenarioConfig &cfg, const engine::MetricsSummary &summary)
{
    ResultRow r;
    r.scheme = cfg.scheme;
    r.n_players = cfg.n_players;
    r.cache_capacity = cfg.cache_capacity;
    r.action_intensity = cfg.action_intensity;
    r.d_th_ms = cfg.latency.d_th * 1e3;
    r.summary = summary;
    r.n_replications = cfg.n_replications;
    r.seed = cfg.seed;
    return r;
}

std::string csv_header()
{
    std::string out;
    for (std::size_t i = 0; i < result_columns.size(); ++i)
    {
        if (i)
            out += ',';
        out += result_columns[i];
    }
    return out;
}

namespace
{

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

} // namespace

std::string format_row(const ResultRow &r)
{
    const auto &s = r.summary;
    std::string out(to_string(r.scheme));
    for (const std::string &field :
         {std::to_string(r.n_players), std::to_string(r.cache_capacity), num(r.action_intensity), num(r.d_th_ms),
          num(s.mean_total_ms), num(s.mean_comp_ms), num(s.mean_comm_ms), num(s.p99_comm_ms), num(s.reliability),
          num(s.mean_rate_bps / 1e9), num(s.hd_success), num(s.margin_of_error_ms), std::to_string(r.n_replications),
          std::to_string(r.seed)})
        out += ',' + field;
    return out;
}

void append_results(const std::filesystem::path &path, const std::vector<ResultRow> &rows)
{
    std::error_code ec;
    const bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out)
        throw std::runtime_error("cannot write results to " + path.string());
    if (fresh)
        out << csv_header() << '\n';
    for (const auto &r : rows)
        out << format_row(r) << '\n';
    out.flush();
    if (!out)
        throw std::runtime_error("failed writing results to " + path.string());
}

} // namespace vrarcade
