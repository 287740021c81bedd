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

#ifndef VRARCADE_METRICS_HPP
#define VRARCADE_METRICS_HPP

#include "vrarcade/records.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace vrarcade::engine
{

struct MetricsParams
{
    double reliability_threshold = 10e-3; // seconds
    double d_th = 20e-3;
    double epsilon = 0.01;
    double frame_period = 1.0 / 120.0; // seconds between a player's frame requests
};

struct MetricsSummary
{
    std::size_t n_records = 0;
    double mean_total_ms = 0.0;
    double mean_comp_ms = 0.0;
    double mean_comm_ms = 0.0;
    double p99_comm_ms = 0.0;
    double median_comm_ms = 0.0;
    double reliability = 0.0;   // see compute_metrics
    double mean_rate_bps = 0.0; // HD bits per requested frame period
    double hd_success = 0.0;
    double violation_rate = 0.0; // Pr(d_total >= d_th)
    bool constraint_satisfied = false;
    std::vector<double> per_replication_means_ms; // mean d_total per replication
    double margin_of_error_ms = 0.0;
};

// Nearest-rank percentile, q in (0, 100]. Throws std::invalid_argument on empty input.
double nearest_rank_percentile(std::vector<double> values, double q);

// Half-width of the 99% normal-approximation interval: 2.576 s / sqrt(n), s the
// sample standard deviation. Zero for a single value; throws on empty input.
double margin_of_error(std::span<const double> means);

// Pooled summary of delivery records. Reliability is the share of HD frames
// whose communication delay is under reliability_threshold; the service rate
// spreads the HD bits over one frame period per request. Throws
// std::invalid_argument on an empty record list.
MetricsSummary compute_metrics(std::span<const DeliveryRecord> records, const MetricsParams &params);

} // namespace vrarcade::engine

#endif
