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
#include "vrarcade/metrics.hpp"
#include "vrarcade/simulation.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

using namespace vrarcade;
using namespace vrarcade::engine;

namespace
{

DeliveryRecord record(double comp_ms, double comm_ms, bool hd, double bits = 1e6)
{
    DeliveryRecord r;
    r.d_comp = comp_ms * 1e-3;
    r.d_comm = comm_ms * 1e-3;
    r.d_total = r.d_comp + r.d_comm;
    r.hd = hd;
    r.bits = hd ? bits : 0.0;
    return r;
}

ScenarioConfig small(int players = 4)
{
    ScenarioConfig c;
    c.n_players = players;
    c.sim_duration = 0.3;
    c.n_replications = 3;
    return c;
}

int count_fields(const std::string &line)
{
    return 1 + static_cast<int>(std::count(line.begin(), line.end(), ','));
}

} // namespace

TEST_CASE("nearest-rank percentile")
{
    std::vector<double> same(100, 7.5);
    CHECK(nearest_rank_percentile(same, 99.0) == 7.5);
    std::vector<double> ramp;
    for (int i = 1; i <= 100; ++i)
        ramp.push_back(i);
    CHECK(nearest_rank_percentile(ramp, 99.0) == 99.0);
    CHECK(nearest_rank_percentile(ramp, 50.0) == 50.0);
    CHECK(nearest_rank_percentile(ramp, 100.0) == 100.0);
    CHECK(nearest_rank_percentile({3.0, 1.0, 2.0}, 50.0) == 2.0);
    CHECK_THROWS_AS(nearest_rank_percentile({}, 50.0), std::invalid_argument);
    CHECK_THROWS_AS(nearest_rank_percentile({1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("margin of error")
{
    const std::vector<double> means{1.0, 2.0, 3.0, 4.0};
    CHECK(margin_of_error(means) == doctest::Approx(1.6628008499717177).epsilon(1e-13));
    const std::vector<double> flat{2.5, 2.5, 2.5};
    CHECK(margin_of_error(flat) == 0.0);
    const std::vector<double> single{4.0};
    CHECK(margin_of_error(single) == 0.0);
    CHECK_THROWS_AS(margin_of_error({}), std::invalid_argument);
}

TEST_CASE("metrics summary")
{
    const std::vector<DeliveryRecord> recs{record(1, 5, true), record(2, 9, true), record(0, 11, true)};
    MetricsParams p;
    p.reliability_threshold = 10e-3;
    p.frame_period = 0.01;
    const auto m = compute_metrics(recs, p);
    CHECK(m.reliability == doctest::Approx(2.0 / 3.0));
    CHECK(m.n_records == 3);
    CHECK(m.mean_comp_ms == doctest::Approx(1.0));
    CHECK(m.mean_comm_ms == doctest::Approx(25.0 / 3.0));
    CHECK(m.mean_total_ms == doctest::Approx(28.0 / 3.0));
    CHECK(m.p99_comm_ms == doctest::Approx(11.0));
    CHECK(m.median_comm_ms == doctest::Approx(9.0));
    CHECK(m.hd_success == 1.0);
    CHECK(m.mean_rate_bps == doctest::Approx(1e8));
    CHECK(m.violation_rate == 0.0);
    CHECK(m.constraint_satisfied);
}

TEST_CASE("fallbacks count against HD success and the constraint")
{
    const std::vector<DeliveryRecord> recs{record(1, 2, true), record(5, 20, false), record(1, 3, true),
                                           record(2, 2, true)};
    MetricsParams p;
    p.frame_period = 0.01;
    const auto m = compute_metrics(recs, p);
    CHECK(m.hd_success == 0.75);
    CHECK(1.0 - m.hd_success == 0.25);
    CHECK(m.violation_rate == 0.25);
    CHECK_FALSE(m.constraint_satisfied);
    CHECK(m.reliability == 1.0);
    CHECK(m.mean_rate_bps == doctest::Approx(3e6 / 0.04));
    CHECK(m.p99_comm_ms >= m.median_comm_ms);
    CHECK_THROWS_AS(compute_metrics({}, p), std::invalid_argument);
}

TEST_CASE("a scenario without players advances and emits nothing")
{
    auto s = validate_config(small(1));
    s.config.n_players = 0;
    Simulation sim(s, 0);
    for (int i = 0; i < 200; ++i)
    {
        CHECK(sim.step().empty());
        CHECK(sim.clock() == doctest::Approx((i + 1) * s.config.slot_duration));
    }
    CHECK_FALSE(sim.has_pending());
}

TEST_CASE("zero duration yields no records")
{
    auto c = small();
    c.sim_duration = 0.0;
    const auto r = run_replication(validate_config(c), 0);
    CHECK(r.records.empty());
    CHECK(r.stats.requests == 0);
}

TEST_CASE("a cached frame on a clear link arrives in one slot")
{
    ScenarioConfig c;
    c.n_players = 1;
    c.action_intensity = 0.0;
    c.hd_size = 2e5; // fits in one slot at any rate above 400 Mbit/s
    c.sim_duration = 0.5;
    c.scheme = Scheme::Proposed;
    const auto s = validate_config(c);
    const auto r = run_replication(s, 0);
    REQUIRE(!r.records.empty());
    CHECK(r.stats.cache_hits == r.stats.requests);
    for (const auto &rec : r.records)
    {
        CHECK(rec.hd);
        CHECK(rec.d_comp == 0.0);
        CHECK(rec.d_comm == doctest::Approx(c.slot_duration).epsilon(1e-9));
    }
}

TEST_CASE("replications are reproducible and independent")
{
    const auto s = validate_config(small(6));
    const auto a = run_replication(s, 0);
    const auto b = run_replication(s, 0);
    CHECK(a.records == b.records);
    CHECK(a.stats.requests == b.stats.requests);

    Simulation s0(s, 0), s1(s, 1);
    int differ = 0;
    for (int u = 0; u < 6; ++u)
        for (int i = 0; i < s.config.n_actions; ++i)
            differ += s0.catalog().affects(u, i) != s1.catalog().affects(u, i);
    CHECK(differ > 0);
    CHECK(run_replication(s, 1).records != a.records);
}

TEST_CASE("every request resolves exactly once")
{
    for (Scheme scheme : {Scheme::Proposed, Scheme::Baseline1, Scheme::Baseline2})
        for (double d_th : {5e-3, 20e-3})
        {
            auto c = small(12);
            c.scheme = scheme;
            c.latency.d_th = d_th;
            c.action_intensity = 4.0;
            const auto s = validate_config(c);
            for (int rep = 0; rep < 3; ++rep)
            {
                const auto r = run_replication(s, rep);
                CHECK(r.stats.requests == static_cast<std::int64_t>(r.records.size()));
                CHECK(r.stats.hd + r.stats.fallbacks == r.stats.requests);
                std::set<std::pair<int, std::int64_t>> seen;
                std::int64_t hd = 0;
                for (const auto &rec : r.records)
                {
                    CHECK(seen.insert({rec.player, rec.frame_index}).second);
                    CHECK(rec.d_total == rec.d_comp + rec.d_comm);
                    CHECK(rec.d_comp >= 0.0);
                    CHECK(rec.d_comm >= 0.0);
                    CHECK(rec.arrival_slot >= 0);
                    hd += rec.hd;
                    if (rec.hd)
                    {
                        CHECK(rec.d_total < d_th);
                        CHECK(rec.serving_set_size >= 1);
                        CHECK(rec.serving_set_size <= 2);
                    }
                    else
                        CHECK(rec.d_total >= d_th);
                    if (scheme != Scheme::Proposed)
                        CHECK(rec.serving_set_size <= 1);
                }
                CHECK(hd == r.stats.hd);
            }
        }
}

TEST_CASE("players stay inside their pods")
{
    auto c = small(16);
    c.max_speed = 3.0;
    const auto s = validate_config(c);
    Simulation sim(s, 2);
    std::set<std::pair<double, double>> pods;
    for (int u = 0; u < sim.n_players(); ++u)
        pods.insert({sim.pod_center(u).x, sim.pod_center(u).y});
    CHECK(pods.size() == 16);
    for (int i = 0; i < 2000; ++i)
    {
        sim.step();
        for (int u = 0; u < sim.n_players(); ++u)
        {
            const auto p = sim.pose(u);
            CHECK(std::abs(p.position.x - sim.pod_center(u).x) <= sim.pod_half_width());
            CHECK(std::abs(p.position.y - sim.pod_center(u).y) <= sim.pod_half_depth());
            CHECK(std::abs(p.head_azimuth) <= M_PI);
        }
    }
}

TEST_CASE("engine state stays within its bounds")
{
    auto c = small(16);
    c.cache_capacity = 8;
    c.action_intensity = 4.0;
    const auto s = validate_config(c);
    Simulation sim(s, 0);
    for (int i = 0; i < 600; ++i)
    {
        sim.step();
        CHECK(sim.cache().size() <= 8);
        CHECK(sim.slot() == i + 1);
        for (int u = 0; u < sim.n_players(); ++u)
            CHECK(sim.avg_rate(u) >= 0.0);
    }
    CHECK(sim.blockage_loss() >= 20.0);
    CHECK(sim.blockage_loss() <= 35.0);
    CHECK(sim.ap_positions().size() == 4);
}

TEST_CASE("a configured blockage loss is used as given")
{
    auto c = small();
    c.blockage_loss = 22.0;
    Simulation sim(validate_config(c), 0);
    CHECK(sim.blockage_loss() == 22.0);
}

TEST_CASE("the reactive baseline ignores the cache size")
{
    auto c = small(8);
    c.scheme = Scheme::Baseline1;
    c.cache_capacity = 0;
    const auto none = run_replication(validate_config(c), 0);
    c.cache_capacity = 128;
    const auto big = run_replication(validate_config(c), 0);
    CHECK(none.records == big.records);
    CHECK(big.stats.cache_hits == 0);
    CHECK(big.stats.proactive_tasks == 0);
}

TEST_CASE("more cache never raises the computing delay")
{
    for (Scheme scheme : {Scheme::Proposed, Scheme::Baseline2})
    {
        auto c = small(8);
        c.n_servers = 8;
        c.scheme = scheme;
        c.sim_duration = 0.5;
        c.n_replications = 4;
        double last = std::numeric_limits<double>::infinity();
        for (int cap : {0, 8, 32, 128})
        {
            c.cache_capacity = cap;
            const auto r = run_experiment(validate_config(c), {1, {}});
            // Equal schedules can differ in the last bits of accumulated server time.
            CHECK(r.summary.mean_comp_ms <= last * (1.0 + 1e-9));
            last = r.summary.mean_comp_ms;
        }
    }
}

TEST_CASE("experiment aggregates do not depend on the worker count")
{
    auto c = small(8);
    c.n_replications = 5;
    const auto s = validate_config(c);
    const auto one = run_experiment(s, {1, {}});
    const auto many = run_experiment(s, {4, {}});
    CHECK(one.summary.mean_total_ms == many.summary.mean_total_ms);
    CHECK(one.summary.p99_comm_ms == many.summary.p99_comm_ms);
    CHECK(one.summary.per_replication_means_ms == many.summary.per_replication_means_ms);
    CHECK(one.summary.margin_of_error_ms == many.summary.margin_of_error_ms);
    CHECK(one.totals.requests == many.totals.requests);
    CHECK(one.summary.per_replication_means_ms.size() == 5);
    CHECK(one.summary.margin_of_error_ms >= 0.0);
    CHECK(one.summary.reliability >= 0.0);
    CHECK(one.summary.reliability <= 1.0);
}

TEST_CASE("an experiment with nothing measured is an error")
{
    auto c = small();
    c.sim_duration = 0.0;
    CHECK_THROWS_AS(run_experiment(validate_config(c), {1, {}}), std::runtime_error);
}

TEST_CASE("trace outputs follow their headers")
{
    auto c = small(6);
    c.sim_duration = 0.1;
    const auto s = validate_config(c);
    std::ostringstream links, compute, matching;
    run_replication(s, 0, {&links, &compute, &matching});
    const std::pair<std::ostringstream *, const char *> sinks[] = {
        {&links, links_trace_header}, {&compute, compute_trace_header}, {&matching, matching_trace_header}};
    for (const auto &[stream, header] : sinks)
    {
        std::istringstream in(stream->str());
        std::string line;
        int rows = 0;
        while (std::getline(in, line))
        {
            CHECK(count_fields(line) == count_fields(header));
            ++rows;
        }
        CHECK(rows > 0);
    }
    // Tracing does not perturb the run.
    CHECK(run_replication(s, 0).records == run_replication(s, 0, {&links, nullptr, nullptr}).records);
}

TEST_CASE("load raises the mean delay")
{
    auto c = small();
    c.n_servers = 8;
    c.sim_duration = 0.5;
    c.n_replications = 4;
    double last = 0.0;
    for (int n : {4, 8, 16})
    {
        c.n_players = n;
        const double d = run_experiment(validate_config(c), {1, {}}).summary.mean_total_ms;
        CHECK(d >= last);
        last = d;
    }
    c.n_players = 16;
    last = 0.0;
    for (double lambda : {0.5, 2.0, 8.0})
    {
        c.action_intensity = lambda;
        const double d = run_experiment(validate_config(c), {1, {}}).summary.mean_total_ms;
        CHECK(d >= last);
        last = d;
    }
}
