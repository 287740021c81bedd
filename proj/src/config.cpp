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

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace vrarcade
{

namespace
{

void require(bool ok, const char *field, const std::string &what)
{
    if (!ok)
        throw ConfigError(field, what);
}

std::vector<Vec3> perimeter_layout(int n, double width, double depth, double height)
{
    // Evenly spaced along the walls, starting half a spacing in from the
    // origin corner; four APs land on the wall midpoints.
    std::vector<Vec3> out;
    const double perimeter = 2.0 * (width + depth);
    for (int k = 0; k < n; ++k)
    {
        double s = (k + 0.5) * perimeter / n;
        Vec3 p{0.0, 0.0, height};
        if (s < width)
            p.x = s;
        else if ((s -= width) < depth)
            p = {width, s, height};
        else if ((s -= depth) < width)
            p = {width - s, depth, height};
        else
            p = {0.0, depth - (s - width), height};
        out.push_back(p);
    }
    return out;
}

} // namespace

ValidatedScenario validate_config(const ScenarioConfig &raw)
{
    const ScenarioConfig &c = raw;
    require(c.arena_width > 0.0, "arena_width", "must be positive");
    require(c.arena_depth > 0.0, "arena_depth", "must be positive");
    require(c.pod_grid.rows >= 1 && c.pod_grid.cols >= 1, "pod_grid", "rows and cols must be >= 1");
    require(c.n_players >= 1, "n_players", "must be at least 1");
    require(c.pod_grid.rows * c.pod_grid.cols >= c.n_players, "pod_grid",
            "holds " + std::to_string(c.pod_grid.rows * c.pod_grid.cols) + " pods but n_players is " +
                std::to_string(c.n_players));
    require(c.n_aps >= 1, "n_aps", "must be >= 1");
    require(c.ap_positions.empty() || static_cast<int>(c.ap_positions.size()) == c.n_aps, "ap_positions",
            "must list exactly n_aps positions");
    for (const auto &p : c.ap_positions)
        require(p.x >= 0.0 && p.x <= c.arena_width && p.y >= 0.0 && p.y <= c.arena_depth, "ap_positions",
                "position outside the arena");
    require(c.ap_height >= 0.0, "ap_height", "must be non-negative");
    require(c.ap_jitter >= 0.0, "ap_jitter", "must be non-negative");

    require(c.n_servers >= 1, "n_servers", "must be >= 1");
    require(c.server_rate > 0.0, "server_rate", "must be positive");
    require(c.cache_capacity >= 0, "cache_capacity", "must be non-negative");
    require(c.prediction_window >= 0, "prediction_window", "must be non-negative");
    require(c.top_k >= 0, "top_k", "must be non-negative");
    require(c.reserved_servers >= 0, "reserved_servers", "must be non-negative");

    require(c.n_actions >= 1, "n_actions", "must be >= 1");
    require(c.zipf_z >= 0.0, "zipf_z", "must be non-negative");
    require(c.action_intensity >= 0.0, "action_intensity", "must be non-negative");
    require(c.impact_density > 0.0 && c.impact_density <= 1.0, "impact_density", "must be in (0, 1]");
    require(c.popularity_alpha >= 0.0, "popularity_alpha", "must be non-negative");
    require(c.frame_rate > 0.0, "frame_rate", "must be positive");
    require(!c.hd_size || *c.hd_size > 0.0, "hd_size", "must be positive");

    require(c.carrier_freq > 0.0, "carrier_freq", "must be positive");
    require(c.bandwidth > 0.0, "bandwidth", "must be positive");
    require(c.antenna.mainlobe_gain > c.antenna.sidelobe_gain, "antenna",
            "mainlobe_gain must exceed sidelobe_gain");
    require(c.antenna.beamwidth > 0.0 && c.antenna.beamwidth < 360.0, "antenna", "beamwidth must be in (0, 360)");
    require(!c.blockage_loss || (*c.blockage_loss >= 20.0 && *c.blockage_loss <= 35.0), "blockage_loss", "must be in [20, 35] dB");
    require(c.body_radius >= 0.0, "body_radius", "must be non-negative");
    require(c.self_block_cone >= 0.0 && c.self_block_cone < 360.0, "self_block_cone", "must be in [0, 360)");
    require(c.rate_requirement > 0.0, "rate_requirement", "must be positive");
    require(!c.mc_rate_threshold || *c.mc_rate_threshold >= 0.0, "mc_rate_threshold", "must be non-negative");
    require(c.avg_rate_smoothing > 0.0 && c.avg_rate_smoothing <= 1.0, "avg_rate_smoothing", "must be in (0, 1]");

    require(c.player_height >= 0.0, "player_height", "must be non-negative");
    require(c.max_speed >= 0.0, "max_speed", "must be non-negative");
    require(c.head_sigma >= 0.0, "head_sigma", "must be non-negative");

    require(c.latency.d_th > 0.0, "d_th", "must be positive");
    require(c.latency.epsilon > 0.0 && c.latency.epsilon < 1.0, "epsilon", "must be in (0, 1)");
    require(c.reliability_threshold > 0.0, "reliability_threshold", "must be positive");

    require(c.slot_duration > 0.0, "slot_duration", "must be positive");
    require(c.sim_duration >= 0.0, "sim_duration", "must be non-negative");
    require(c.warmup_fraction >= 0.0 && c.warmup_fraction < 1.0, "warmup_fraction", "must be in [0, 1)");
    require(c.n_replications >= 1, "n_replications", "must be >= 1");

    ValidatedScenario out;
    out.config = c;
    out.pod_width = c.arena_width / c.pod_grid.cols;
    out.pod_depth = c.arena_depth / c.pod_grid.rows;
    for (int r = 0; r < c.pod_grid.rows; ++r)
        for (int col = 0; col < c.pod_grid.cols; ++col)
            out.pod_centers.push_back({(col + 0.5) * out.pod_width, (r + 0.5) * out.pod_depth, c.player_height});
    out.ap_positions = c.ap_positions.empty()
                           ? perimeter_layout(c.n_aps, c.arena_width, c.arena_depth, c.ap_height)
                           : c.ap_positions;
    out.hd_size = c.hd_size.value_or(c.rate_requirement / c.frame_rate);
    out.compute_demand = 1.0 / c.server_rate;
    out.mc_rate_threshold = c.mc_rate_threshold.value_or(c.rate_requirement);
    out.config.hd_size = out.hd_size;
    out.config.mc_rate_threshold = out.mc_rate_threshold;
    return out;
}

// ---------------------------------------------------------------- JSON

namespace
{

using json = nlohmann::json;
using Setter = std::function<void(const json &)>;

double as_number(const json &v, const char *field)
{
    if (!v.is_number())
        throw ConfigError(field, "expected a number");
    return v.get<double>();
}

int as_int(const json &v, const char *field)
{
    if (!v.is_number_integer())
        throw ConfigError(field, "expected an integer");
    return v.get<int>();
}

Vec3 as_vec3(const json &v, const char *field)
{
    if (!v.is_array() || v.size() != 3)
        throw ConfigError(field, "expected [x, y, z]");
    return {as_number(v[0], field), as_number(v[1], field), as_number(v[2], field)};
}

void apply_fields(const json &doc, const std::map<std::string, Setter> &setters, const std::string &where)
{
    if (!doc.is_object())
        throw ConfigError(where.empty() ? "scenario" : where, "expected a JSON object");
    for (const auto &[key, value] : doc.items())
    {
        auto it = setters.find(key);
        if (it == setters.end())
            throw ConfigError(where.empty() ? key : where + "." + key, "unknown field");
        it->second(value);
    }
}

} // namespace

ScenarioConfig config_from_json(const json &doc)
{
    ScenarioConfig c;
    auto num = [](double &dst, const char *f) { return Setter([&dst, f](const json &v) { dst = as_number(v, f); }); };
    auto integer = [](int &dst, const char *f) { return Setter([&dst, f](const json &v) { dst = as_int(v, f); }); };
    auto opt_num = [](std::optional<double> &dst, const char *f) {
        return Setter([&dst, f](const json &v) {
            if (v.is_null())
                dst.reset();
            else
                dst = as_number(v, f);
        });
    };

    std::map<std::string, Setter> setters{
        {"arena_width", num(c.arena_width, "arena_width")},
        {"arena_depth", num(c.arena_depth, "arena_depth")},
        {"pod_grid",
         [&c](const json &v) {
             if (v.is_array())
             {
                 if (v.size() != 2)
                     throw ConfigError("pod_grid", "expected [rows, cols]");
                 c.pod_grid = {as_int(v[0], "pod_grid"), as_int(v[1], "pod_grid")};
                 return;
             }
             apply_fields(v,
                          {{"rows", [&c](const json &x) { c.pod_grid.rows = as_int(x, "pod_grid.rows"); }},
                           {"cols", [&c](const json &x) { c.pod_grid.cols = as_int(x, "pod_grid.cols"); }}},
                          "pod_grid");
         }},
        {"n_aps", integer(c.n_aps, "n_aps")},
        {"ap_positions",
         [&c](const json &v) {
             if (!v.is_array())
                 throw ConfigError("ap_positions", "expected a list of [x, y, z]");
             c.ap_positions.clear();
             for (const auto &p : v)
                 c.ap_positions.push_back(as_vec3(p, "ap_positions"));
         }},
        {"ap_height", num(c.ap_height, "ap_height")},
        {"ap_jitter", num(c.ap_jitter, "ap_jitter")},
        {"n_servers", integer(c.n_servers, "n_servers")},
        {"server_rate", num(c.server_rate, "server_rate")},
        {"cache_capacity", integer(c.cache_capacity, "cache_capacity")},
        {"prediction_window", integer(c.prediction_window, "prediction_window")},
        {"top_k", integer(c.top_k, "top_k")},
        {"reserved_servers", integer(c.reserved_servers, "reserved_servers")},
        {"n_players", integer(c.n_players, "n_players")},
        {"n_actions", integer(c.n_actions, "n_actions")},
        {"zipf_z", num(c.zipf_z, "zipf_z")},
        {"action_intensity", num(c.action_intensity, "action_intensity")},
        {"impact_density", num(c.impact_density, "impact_density")},
        {"popularity_alpha", num(c.popularity_alpha, "popularity_alpha")},
        {"frame_rate", num(c.frame_rate, "frame_rate")},
        {"hd_size", opt_num(c.hd_size, "hd_size")},
        {"carrier_freq", num(c.carrier_freq, "carrier_freq")},
        {"bandwidth", num(c.bandwidth, "bandwidth")},
        {"tx_power", num(c.tx_power, "tx_power")},
        {"noise_figure", num(c.noise_figure, "noise_figure")},
        {"antenna",
         [&c](const json &v) {
             apply_fields(
                 v,
                 {{"mainlobe_gain", [&c](const json &x) { c.antenna.mainlobe_gain = as_number(x, "antenna.mainlobe_gain"); }},
                  {"sidelobe_gain", [&c](const json &x) { c.antenna.sidelobe_gain = as_number(x, "antenna.sidelobe_gain"); }},
                  {"beamwidth", [&c](const json &x) { c.antenna.beamwidth = as_number(x, "antenna.beamwidth"); }}},
                 "antenna");
         }},
        {"blockage_loss", opt_num(c.blockage_loss, "blockage_loss")},
        {"body_radius", num(c.body_radius, "body_radius")},
        {"self_block_cone", num(c.self_block_cone, "self_block_cone")},
        {"rate_requirement", num(c.rate_requirement, "rate_requirement")},
        {"mc_rate_threshold", opt_num(c.mc_rate_threshold, "mc_rate_threshold")},
        {"avg_rate_smoothing", num(c.avg_rate_smoothing, "avg_rate_smoothing")},
        {"player_height", num(c.player_height, "player_height")},
        {"max_speed", num(c.max_speed, "max_speed")},
        {"head_sigma", num(c.head_sigma, "head_sigma")},
        {"latency",
         [&c](const json &v) {
             apply_fields(v,
                          {{"d_th", [&c](const json &x) { c.latency.d_th = as_number(x, "d_th"); }},
                           {"epsilon", [&c](const json &x) { c.latency.epsilon = as_number(x, "epsilon"); }}},
                          "latency");
         }},
        {"reliability_threshold", num(c.reliability_threshold, "reliability_threshold")},
        {"slot_duration", num(c.slot_duration, "slot_duration")},
        {"sim_duration", num(c.sim_duration, "sim_duration")},
        {"warmup_fraction", num(c.warmup_fraction, "warmup_fraction")},
        {"n_replications", integer(c.n_replications, "n_replications")},
        {"scheme",
         [&c](const json &v) {
             if (!v.is_string())
                 throw ConfigError("scheme", "expected a string");
             try
             {
                 c.scheme = parse_scheme(v.get<std::string>());
             }
             catch (const std::invalid_argument &e)
             {
                 throw ConfigError("scheme", e.what());
             }
         }},
        {"seed",
         [&c](const json &v) {
             if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
                 throw ConfigError("seed", "expected a non-negative integer");
             c.seed = v.get<std::uint64_t>();
         }},
    };
    apply_fields(doc, setters, "");
    return c;
}

ScenarioConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config", "cannot open " + path.string());
    json doc;
    try
    {
        doc = json::parse(in);
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError("config", std::string("malformed JSON: ") + e.what());
    }
    return config_from_json(doc);
}

json config_to_json(const ScenarioConfig &c)
{
    json aps = json::array();
    for (const auto &p : c.ap_positions)
        aps.push_back({p.x, p.y, p.z});
    json doc = {
        {"arena_width", c.arena_width},
        {"arena_depth", c.arena_depth},
        {"pod_grid", {c.pod_grid.rows, c.pod_grid.cols}},
        {"n_aps", c.n_aps},
        {"ap_positions", aps},
        {"ap_height", c.ap_height},
        {"ap_jitter", c.ap_jitter},
        {"n_servers", c.n_servers},
        {"server_rate", c.server_rate},
        {"cache_capacity", c.cache_capacity},
        {"prediction_window", c.prediction_window},
        {"top_k", c.top_k},
        {"reserved_servers", c.reserved_servers},
        {"n_players", c.n_players},
        {"n_actions", c.n_actions},
        {"zipf_z", c.zipf_z},
        {"action_intensity", c.action_intensity},
        {"impact_density", c.impact_density},
        {"popularity_alpha", c.popularity_alpha},
        {"frame_rate", c.frame_rate},
        {"carrier_freq", c.carrier_freq},
        {"bandwidth", c.bandwidth},
        {"tx_power", c.tx_power},
        {"noise_figure", c.noise_figure},
        {"antenna",
         {{"mainlobe_gain", c.antenna.mainlobe_gain},
          {"sidelobe_gain", c.antenna.sidelobe_gain},
          {"beamwidth", c.antenna.beamwidth}}},
        {"blockage_loss", c.blockage_loss ? json(*c.blockage_loss) : json(nullptr)},
        {"body_radius", c.body_radius},
        {"self_block_cone", c.self_block_cone},
        {"rate_requirement", c.rate_requirement},
        {"avg_rate_smoothing", c.avg_rate_smoothing},
        {"player_height", c.player_height},
        {"max_speed", c.max_speed},
        {"head_sigma", c.head_sigma},
        {"latency", {{"d_th", c.latency.d_th}, {"epsilon", c.latency.epsilon}}},
        {"reliability_threshold", c.reliability_threshold},
        {"slot_duration", c.slot_duration},
        {"sim_duration", c.sim_duration},
        {"warmup_fraction", c.warmup_fraction},
        {"n_replications", c.n_replications},
        {"scheme", std::string(to_string(c.scheme))},
        {"seed", c.seed},
    };
    doc["hd_size"] = c.hd_size ? json(*c.hd_size) : json(nullptr);
    doc["mc_rate_threshold"] = c.mc_rate_threshold ? json(*c.mc_rate_threshold) : json(nullptr);
    return doc;
}

json scenario_to_json(const ValidatedScenario &s)
{
    json doc = config_to_json(s.config);
    json aps = json::array();
    for (const auto &p : s.ap_positions)
        aps.push_back({p.x, p.y, p.z});
    doc["ap_positions"] = aps;
    return doc;
}

} // namespace vrarcade
