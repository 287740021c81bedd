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

#include "vrarcade/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace vrarcade::engine
{

int default_workers()
{
    if (const char *env = std::getenv("VRARCADE_WORKERS"))
    {
        try
        {
            const int n = std::stoi(env);
            if (n > 0)
                return n;
        }
        catch (const std::exception &)
        {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace
{

void add_stats(ReplicationStats &acc, const ReplicationStats &s)
{
    acc.requests += s.requests;
    acc.hd += s.hd;
    acc.fallbacks += s.fallbacks;
    acc.cache_hits += s.cache_hits;
    acc.rerenders += s.rerenders;
    acc.actions += s.actions;
    acc.invalidations += s.invalidations;
    acc.proactive_tasks += s.proactive_tasks;
    acc.mc_grants += s.mc_grants;
    acc.mc_starved += s.mc_starved;
    acc.clamped_distances += s.clamped_distances;
}

} // namespace

ExperimentResult run_experiment(const ValidatedScenario &scenario, const ExperimentOptions &options)
{
    const int n = scenario.config.n_replications;
    std::vector<ReplicationResult> reps(n);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&] {
        for (int i = next++; i < n; i = next++)
        {
            try
            {
                reps[i] = run_replication(scenario, i, i == 0 ? options.trace : TraceSinks{});
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = n;
            }
        }
    };
    const int workers = std::min(n, options.workers > 0 ? options.workers : default_workers());
    if (workers <= 1)
        work();
    else
    {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(work);
    }
    if (failure)
        std::rethrow_exception(failure);

    ExperimentResult out;
    std::vector<DeliveryRecord> all;
    std::vector<double> means;
    for (const auto &r : reps)
    {
        add_stats(out.totals, r.stats);
        if (r.records.empty())
            continue;
        double sum = 0.0;
        for (const auto &rec : r.records)
            sum += rec.d_total;
        means.push_back(sum / static_cast<double>(r.records.size()) * 1e3);
        all.insert(all.end(), r.records.begin(), r.records.end());
    }
    if (all.empty())
        throw std::runtime_error("run_experiment: no frames were measured (check sim_duration and n_players)");

    const auto &c = scenario.config;
    out.summary = compute_metrics(all, {c.reliability_threshold, c.latency.d_th, c.latency.epsilon, 1.0 / c.frame_rate});
    out.summary.per_replication_means_ms = means;
    out.summary.margin_of_error_ms = margin_of_error(means);
    return out;
}

} // namespace vrarcade::engine
