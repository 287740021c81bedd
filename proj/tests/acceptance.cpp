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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "matching_oracle.hpp"

#include "vrarcade/capacity.hpp"
#include "vrarcade/channel.hpp"
#include "vrarcade/config.hpp"
#include "vrarcade/experiment.hpp"
#include "vrarcade/matching.hpp"
#include "vrarcade/rng.hpp"
#include "vrarcade/sweep.hpp"
#include "vrarcade/workload.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

using namespace vrarcade;
namespace fs = std::filesystem;

namespace
{

struct Verdict
{
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *f, double a, double b = 0.0, double c = 0.0, double d = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

double uniform_in(Rng &rng, double lo, double hi)
{
    return lo + (hi - lo) * uniform01(rng);
}

engine::MetricsSummary summarize(const ScenarioConfig &c)
{
    return engine::run_experiment(validate_config(c), {engine::default_workers(), {}}).summary;
}

ScenarioConfig preset_config(const char *name, int replications)
{
    ScenarioConfig c;
    apply_preset(c, find_preset(name));
    c.n_replications = replications;
    return c;
}

Verdict capacity()
{
    const double px = pixel_rate(150, 120, 60, 2, 120);
    const double bits = required_bitrate(150, 120, 60, 2, 120, 36, 600);
    const bool ok = std::abs(px - 1.5552e10) <= 1e-6 * 1.5552e10 && std::abs(bits - 9.3312e8) <= 1e-6 * 9.3312e8 &&
                    std::floor(px / 1e8) == 155.0 && bits <= 1e9;
    return {ok, fmt("%.6g px/s, %.6g bit/s", px, bits)};
}

Verdict zipf_fidelity()
{
    Rng topo = make_stream({7, 1});
    const auto cat = make_catalog(100, 0.8, 16, 0.25, topo);
    const auto pmf = zipf_pmf(100, 0.8);
    Rng rng = make_stream({7, 2});
    std::vector<double> hist(100, 0.0);
    const int n = 1000000;
    for (int i = 0; i < n; ++i)
        hist[cat.draw_action(rng)] += 1.0;
    double tv = 0.0;
    for (int i = 0; i < 100; ++i)
        tv += std::abs(hist[i] / n - pmf[i]);
    tv /= 2.0;
    return {tv < 0.01, fmt("TV distance %.5f over 1e6 draws", tv)};
}

Verdict matching_stability()
{
    Rng rng = make_stream({7, 3});
    int blocking = 0, infeasible = 0;
    for (int trial = 0; trial < 10000; ++trial)
    {
        const auto p = oracle::random_profile(rng, 4, 6, 3);
        const auto m = oracle::to_assignment(radio::deferred_acceptance(p));
        infeasible += !oracle::feasible(p, m);
        blocking += oracle::blocking_pairs(p, m);
    }
    return {blocking == 0 && infeasible == 0,
            fmt("%.0f blocking pairs, %.0f infeasible matchings over 1e4 profiles", blocking, infeasible)};
}

Verdict latency_accounting()
{
    // comp ms, comm ms, violates 20 ms?
    struct Row
    {
        double comp, comm;
        bool violates;
    };
    const std::vector<Row> block{
        {0, 1, false},    {2, 3, false},   {5, 5, false},   {9.5, 10, false}, {10, 9.999, false},
        {15, 5, true},    {20, 0, true},   {0, 20, true},   {12, 7.5, false}, {18, 1, false},
        {1, 18.9, false}, {3, 17, true},   {25, 3, true},   {4.25, 4.25, false}, {0.5, 0.5, false},
        {19, 0.5, false}, {10, 10.5, true}, {6, 6, false},  {0, 0, false},    {11, 8, false},
    };
    int hand = 0;
    std::vector<DeliveryRecord> recs;
    for (int rep = 0; rep < 50; ++rep)
        for (const auto &r : block)
        {
            DeliveryRecord d;
            d.d_comp = r.comp * 1e-3;
            d.d_comm = r.comm * 1e-3;
            d.d_total = d.d_comp + d.d_comm;
            recs.push_back(d);
            hand += r.violates;
        }
    const auto c = radio::check_latency_constraint(recs, 20e-3, 0.01);
    const double expected = static_cast<double>(hand) / 1000.0;
    return {recs.size() == 1000 && c.violation_rate == expected && !c.satisfied,
            fmt("violation rate %.4f, hand count %.0f / 1000", c.violation_rate, hand)};
}

Verdict scheme_ordering()
{
    ScenarioConfig c = preset_config("fig3", 20);
    c.n_players = 16;
    c.latency.d_th = 20e-3;
    c.latency.epsilon = 0.01;
    std::vector<engine::MetricsSummary> s;
    for (Scheme k : {Scheme::Proposed, Scheme::Baseline2, Scheme::Baseline1})
    {
        c.scheme = k;
        s.push_back(summarize(c));
    }
    const bool ok = s[0].mean_total_ms <= s[1].mean_total_ms && s[1].mean_total_ms <= s[2].mean_total_ms &&
                    s[0].p99_comm_ms <= s[1].p99_comm_ms;
    return {ok, fmt("mean d_total P/B2/B1 = %.3f/%.3f/%.3f ms", s[0].mean_total_ms, s[1].mean_total_ms,
                    s[2].mean_total_ms) +
                    fmt(", p99 d_comm P/B2 = %.3f/%.3f ms", s[0].p99_comm_ms, s[1].p99_comm_ms)};
}

Verdict cache_monotonicity()
{
    ScenarioConfig c = preset_config("fig5a", 20);
    std::string detail;
    bool ok = true;
    for (Scheme k : {Scheme::Proposed, Scheme::Baseline2, Scheme::Baseline1})
    {
        c.scheme = k;
        std::vector<double> comp;
        for (int cap : {0, 8, 32, 128})
        {
            c.cache_capacity = cap;
            comp.push_back(summarize(c).mean_comp_ms);
        }
        for (std::size_t i = 1; i < comp.size(); ++i)
        {
            // Equal schedules can differ in the last bits of accumulated server time.
            ok = ok && comp[i] <= comp[i - 1] * (1.0 + 1e-9);
            if (k == Scheme::Baseline1)
                ok = ok && std::abs(comp[i] - comp[0]) <= 1e-9 * comp[0];
        }
        detail += std::string(detail.empty() ? "" : "; ") + std::string(to_string(k)) +
                  fmt(" %.3f/%.3f/%.3f/%.3f ms", comp[0], comp[1], comp[2], comp[3]);
    }
    return {ok, "mean d_comp at cache 0/8/32/128: " + detail};
}

Verdict tradeoff_direction()
{
    ScenarioConfig c = preset_config("fig4", 20);
    c.scheme = Scheme::Proposed;
    std::vector<double> rel, rate;
    for (double d_th : {5.0, 10.0, 20.0, 40.0})
    {
        apply_sweep_value(c, SweepAxis::DTh, d_th);
        const auto s = summarize(c);
        rel.push_back(s.reliability);
        rate.push_back(s.mean_rate_bps / 1e9);
    }
    bool ok = true;
    for (std::size_t i = 1; i < rel.size(); ++i)
        ok = ok && rel[i] <= rel[i - 1] && rate[i] >= rate[i - 1];
    return {ok, fmt("reliability %.4f/%.4f/%.4f/%.4f", rel[0], rel[1], rel[2], rel[3]) +
                    fmt(", rate %.4f/%.4f/%.4f/%.4f Gbps at d_th 5/10/20/40 ms", rate[0], rate[1], rate[2], rate[3])};
}

Verdict mc_sinr()
{
    const ScenarioConfig cfg;
    const double noise = channel::noise_dbm(cfg.bandwidth, cfg.noise_figure);
    const double pi = std::acos(-1.0);
    Rng rng = make_stream({7, 4});
    int decreases = 0, checked = 0, off_gain = 0;
    double worst_gain_err = 0.0;
    for (int g = 0; g < 10000; ++g)
    {
        const int n_aps = 2 + static_cast<int>(uniform01(rng) * 5);
        const Vec3 player{uniform_in(rng, 0, cfg.arena_width), uniform_in(rng, 0, cfg.arena_depth), 1.7};
        const double head = uniform_in(rng, -pi, pi);
        std::vector<Vec3> others(1 + static_cast<int>(uniform01(rng) * 6));
        for (auto &o : others)
            o = {uniform_in(rng, 0, cfg.arena_width), uniform_in(rng, 0, cfg.arena_depth), 1.7};
        std::vector<double> rx(n_aps);
        for (auto &p : rx)
        {
            const Vec3 ap{uniform_in(rng, 0, cfg.arena_width), uniform_in(rng, 0, cfg.arena_depth), 3.0};
            const auto link = channel::make_geometry(ap, player, head);
            const bool blocked = channel::blockage_state(link, others, cfg.body_radius, cfg.self_block_cone);
            const double tx_gain = uniform01(rng) < 0.5 ? cfg.antenna.mainlobe_gain
                                                        : channel::antenna_gain_db(uniform_in(rng, -pi, pi), cfg.antenna);
            const double rx_gain = channel::antenna_gain_db(link.azimuth_player_to_ap - head, cfg.antenna);
            p = cfg.tx_power + tx_gain + rx_gain -
                channel::path_loss_db(link.distance, cfg.carrier_freq, blocked, uniform_in(rng, 20, 35));
        }
        const int n_serving = 1 + static_cast<int>(uniform01(rng) * (n_aps - 1));
        const std::vector<double> serving(rx.begin(), rx.begin() + n_serving);
        const std::vector<double> interferers(rx.begin() + n_serving, rx.end());
        const double base = channel::sinr_db(serving, interferers, noise);
        for (std::size_t j = 0; j < interferers.size(); ++j)
        {
            auto s2 = serving;
            auto i2 = interferers;
            s2.push_back(i2[j]);
            i2.erase(i2.begin() + static_cast<long>(j));
            ++checked;
            decreases += channel::sinr_db(s2, i2, noise) < base;
        }
        const std::vector<double> one{rx[0]}, two{rx[0], rx[0]};
        const std::vector<double> rest(rx.begin() + 1, rx.end());
        const double gain = channel::sinr_db(two, rest, noise) - channel::sinr_db(one, rest, noise);
        worst_gain_err = std::max(worst_gain_err, std::abs(gain - 10.0 * std::log10(2.0)));
        off_gain += std::round(gain * 100.0) / 100.0 != 3.01;
    }
    return {decreases == 0 && off_gain == 0 && worst_gain_err < 1e-9,
            fmt("%.0f SINR decreases over %.0f moves; doubling gain within %.2g dB of 3.0103", decreases, checked,
                worst_gain_err)};
}

int run_cli(const std::string &args)
{
    const std::string cmd = std::string("\"") + VRARCADE_CLI_PATH + "\" " + args + " 2>/dev/null";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Verdict determinism()
{
    const fs::path dir = fs::temp_directory_path() / ("vrarcade_accept_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    const auto a = dir / "a.csv", b = dir / "b.csv";
    const int ra = run_cli("--preset fig3 --seed 1 --workers 1 --out " + a.string());
    const int rb = run_cli("--preset fig3 --seed 1 --workers 2 --out " + b.string());
    const std::string ca = slurp(a), cb = slurp(b);
    const long rows = std::count(ca.begin(), ca.end(), '\n') - 1;
    fs::remove_all(dir);
    return {ra == 0 && rb == 0 && !ca.empty() && ca == cb && rows == 12,
            fmt("exit codes %.0f/%.0f, %.0f rows, %.0f bytes each, identical", ra, rb, static_cast<double>(rows),
                static_cast<double>(ca.size())) +
                (ca == cb ? "" : " NOT")};
}

} // namespace

int main()
{
    const std::vector<std::pair<const char *, std::function<Verdict()>>> criteria{
        {"capacity formula", capacity},
        {"zipf fidelity", zipf_fidelity},
        {"matching stability", matching_stability},
        {"latency constraint accounting", latency_accounting},
        {"scheme ordering", scheme_ordering},
        {"cache monotonicity", cache_monotonicity},
        {"tradeoff direction", tradeoff_direction},
        {"MC SINR property", mc_sinr},
        {"determinism", determinism},
    };
    int failed = 0;
    for (const auto &[name, check] : criteria)
    {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try
        {
            v = check();
        }
        catch (const std::exception &e)
        {
            v = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %s: %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !v.pass;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
