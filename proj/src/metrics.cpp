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

#include "vrarcade/metrics.hpp"

#include "vrarcade/matching.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace vrarcade::engine
{

double nearest_rank_percentile(std::vector<double> values, double q)
{
    if (values.empty())
        throw std::invalid_argument("nearest_rank_percentile: no values");
    if (!(q > 0.0 && q <= 100.0))
        throw std::invalid_argument("nearest_rank_percentile: q must be in (0, 100]");
    const auto n = values.size();
    auto rank = static_cast<std::size_t>(std::ceil(q / 100.0 * static_cast<double>(n)));
    rank = std::clamp<std::size_t>(rank, 1, n);
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(rank - 1), values.end());
    return values[rank - 1];
}

double margin_of_error(std::span<const double> means)
{
    if (means.empty())
        throw std::invalid_argument("margin_of_error: no replication means");
    const auto n = static_cast<double>(means.size());
    if (means.size() < 2)
        return 0.0;
    const double mean = std::accumulate(means.begin(), means.end(), 0.0) / n;
    double ss = 0.0;
    for (double m : means)
        ss += (m - mean) * (m - mean);
    return 2.576 * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
}

MetricsSummary compute_metrics(std::span<const DeliveryRecord> records, const MetricsParams &params)
{
    if (records.empty())
        throw std::invalid_argument("compute_metrics: no delivery records");
    MetricsSummary m;
    m.n_records = records.size();
    const double n = static_cast<double>(records.size());

    double total = 0.0, comp = 0.0, comm = 0.0, bits = 0.0;
    std::size_t hd = 0, reliable = 0;
    std::vector<double> comms;
    comms.reserve(records.size());
    for (const auto &r : records)
    {
        total += r.d_total;
        comp += r.d_comp;
        comm += r.d_comm;
        comms.push_back(r.d_comm);
        if (r.hd)
        {
            ++hd;
            bits += r.bits;
            reliable += r.d_comm < params.reliability_threshold;
        }
    }
    m.mean_total_ms = total / n * 1e3;
    m.mean_comp_ms = comp / n * 1e3;
    m.mean_comm_ms = comm / n * 1e3;
    m.p99_comm_ms = nearest_rank_percentile(comms, 99.0) * 1e3;
    m.median_comm_ms = nearest_rank_percentile(std::move(comms), 50.0) * 1e3;
    m.hd_success = static_cast<double>(hd) / n;
    m.reliability = hd ? static_cast<double>(reliable) / static_cast<double>(hd) : 0.0;
    m.mean_rate_bps = params.frame_period > 0.0 ? bits / (n * params.frame_period) : 0.0;

    const auto check = radio::check_latency_constraint(records, params.d_th, params.epsilon);
    m.violation_rate = check.violation_rate;
    m.constraint_satisfied = check.satisfied;
    return m;
}

} // namespace vrarcade::engine
