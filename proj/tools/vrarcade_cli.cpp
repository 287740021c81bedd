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

#include "vrarcade/config.hpp"
#include "vrarcade/experiment.hpp"
#include "vrarcade/results.hpp"
#include "vrarcade/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace
{

using namespace vrarcade;
using nlohmann::json;

constexpr int exit_config = 2;
constexpr int exit_runtime = 3;

struct Options
{
    std::string config_path;
    std::string sweep;
    std::string schemes;
    std::string out = "results.csv";
    std::optional<std::uint64_t> seed;
    std::optional<int> replications;
    std::string preset;
    std::string trace;
    int workers = 0;
};

struct Run
{
    ScenarioConfig cfg;
    std::string label; // axis=value, or "default"
};

std::string value_label(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::vector<Run> plan_runs(const Options &opt)
{
    ScenarioConfig base = opt.config_path.empty() ? ScenarioConfig{} : load_config(opt.config_path);
    std::optional<SweepSpec> sweep;
    std::vector<Scheme> schemes{base.scheme};

    if (!opt.preset.empty())
    {
        const Preset p = find_preset(opt.preset);
        apply_preset(base, p);
        sweep = p.sweep;
        schemes = p.sweep.schemes;
    }
    if (!opt.sweep.empty())
        sweep = parse_sweep(opt.sweep);
    if (!opt.schemes.empty())
        schemes = parse_schemes(opt.schemes);
    if (opt.seed)
        base.seed = *opt.seed;
    if (opt.replications)
        base.n_replications = *opt.replications;

    std::vector<Run> runs;
    const std::vector<double> values = sweep ? sweep->values : std::vector<double>{0.0};
    for (double v : values)
        for (Scheme s : schemes)
        {
            Run r{base, "default"};
            r.cfg.scheme = s;
            if (sweep)
            {
                apply_sweep_value(r.cfg, sweep->axis, v);
                r.label = std::string(to_string(sweep->axis)) + "=" + value_label(v);
            }
            validate_config(r.cfg); // fail before any run starts
            runs.push_back(std::move(r));
        }
    return runs;
}

json load_sidecar(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        return {{"runs", json::array()}};
    try
    {
        json doc = json::parse(in);
        if (doc.is_object() && doc.contains("runs") && doc["runs"].is_array())
            return doc;
    }
    catch (const json::exception &)
    {
    }
    return {{"runs", json::array()}};
}

json stats_json(const engine::ReplicationStats &s)
{
    return {{"requests", s.requests},
            {"hd", s.hd},
            {"fallbacks", s.fallbacks},
            {"cache_hits", s.cache_hits},
            {"rerenders", s.rerenders},
            {"actions", s.actions},
            {"invalidations", s.invalidations},
            {"proactive_tasks", s.proactive_tasks},
            {"mc_grants", s.mc_grants},
            {"mc_starved", s.mc_starved},
            {"clamped_distances", s.clamped_distances}};
}

int run(const Options &opt)
{
    std::vector<Run> runs;
    try
    {
        runs = plan_runs(opt);
    }
    catch (const std::exception &e)
    {
        std::cerr << "vrarcade: " << e.what() << '\n';
        return exit_config;
    }

    {
        std::ofstream probe(opt.out, std::ios::app);
        if (!probe)
        {
            std::cerr << "vrarcade: cannot write to " << opt.out << '\n';
            return exit_runtime;
        }
    }

    const std::string sidecar_path = opt.out + ".json";
    json sidecar = load_sidecar(sidecar_path);
    try
    {
        for (const auto &r : runs)
        {
            const ValidatedScenario scenario = validate_config(r.cfg);
            engine::ExperimentOptions eo;
            eo.workers = opt.workers;
            std::ofstream trace_file;
            if (!opt.trace.empty())
            {
                const std::string path =
                    opt.out + "." + opt.trace + "." + std::string(to_string(r.cfg.scheme)) + "." + r.label + ".csv";
                trace_file.open(path);
                if (!trace_file)
                    throw std::runtime_error("cannot write trace " + path);
                if (opt.trace == "links")
                {
                    trace_file << engine::links_trace_header << '\n';
                    eo.trace.links = &trace_file;
                }
                else if (opt.trace == "compute")
                {
                    trace_file << engine::compute_trace_header << '\n';
                    eo.trace.compute = &trace_file;
                }
                else
                {
                    trace_file << engine::matching_trace_header << '\n';
                    eo.trace.matching = &trace_file;
                }
            }

            std::cerr << "vrarcade: " << to_string(r.cfg.scheme) << " " << r.label << " ("
                      << r.cfg.n_replications << " replications)\n";
            const auto result = engine::run_experiment(scenario, eo);
            append_results(opt.out, {make_row(r.cfg, result.summary)});

            const auto &s = result.summary;
            sidecar["runs"].push_back({{"scheme", to_string(r.cfg.scheme)},
                                       {"point", r.label},
                                       {"config", scenario_to_json(scenario)},
                                       {"per_replication_mean_total_ms", s.per_replication_means_ms},
                                       {"median_comm_ms", s.median_comm_ms},
                                       {"violation_rate", s.violation_rate},
                                       {"constraint_satisfied", s.constraint_satisfied},
                                       {"counters", stats_json(result.totals)}});
            std::ofstream side(sidecar_path, std::ios::trunc);
            if (!side)
                throw std::runtime_error("cannot write " + sidecar_path);
            side << sidecar.dump(2) << '\n';
        }
    }
    catch (const ConfigError &e)
    {
        std::cerr << "vrarcade: " << e.what() << '\n';
        return exit_config;
    }
    catch (const std::exception &e)
    {
        std::cerr << "vrarcade: " << e.what() << '\n';
        return exit_runtime;
    }
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"vrarcade: latency and reliability simulator for wireless VR arcades"};
    Options opt;
    app.add_option("--config", opt.config_path, "Scenario JSON file")->check(CLI::ExistingFile);
    app.add_option("--sweep", opt.sweep, "AXIS=v1,v2,... over n_players, cache_capacity, action_intensity, d_th (ms)");
    app.add_option("--schemes", opt.schemes, "Comma-separated: Proposed, Baseline1, Baseline2");
    app.add_option("--out", opt.out, "Results CSV (appended)")->capture_default_str();
    app.add_option("--seed", opt.seed, "Base seed");
    app.add_option("--replications", opt.replications, "Replications per point")->check(CLI::PositiveNumber);
    app.add_option("--preset", opt.preset, "Figure preset")->check(CLI::IsMember(preset_names()));
    app.add_option("--trace", opt.trace, "Per-slot trace of replication 0")
        ->check(CLI::IsMember({"links", "compute", "matching"}));
    app.add_option("--workers", opt.workers, "Replication workers (default VRARCADE_WORKERS or all cores)")
        ->check(CLI::NonNegativeNumber);
    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return exit_config;
    }
    return run(opt);
}
