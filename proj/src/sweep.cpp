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

#include "vrarcade/sweep.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace vrarcade
{

std::string_view to_string(SweepAxis axis)
{
    switch (axis)
    {
    case SweepAxis::NPlayers:
        return "n_players";
    case SweepAxis::CacheCapacity:
        return "cache_capacity";
    case SweepAxis::ActionIntensity:
        return "action_intensity";
    case SweepAxis::DTh:
        return "d_th";
    }
    return "?";
}

SweepAxis parse_axis(std::string_view name)
{
    for (auto a : {SweepAxis::NPlayers, SweepAxis::CacheCapacity, SweepAxis::ActionIntensity, SweepAxis::DTh})
        if (to_string(a) == name)
            return a;
    throw std::invalid_argument("unknown sweep axis '" + std::string(name) +
                                "' (expected n_players, cache_capacity, action_intensity or d_th)");
}

namespace
{

std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;)
    {
        const auto pos = text.find(sep, start);
        out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            return out;
        start = pos + 1;
    }
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view text, std::string_view axis)
{
    double v = 0.0;
    const auto t = trim(text);
    const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || end != t.data() + t.size() || !std::isfinite(v))
        throw std::invalid_argument("sweep " + std::string(axis) + ": '" + std::string(text) + "' is not a number");
    return v;
}

int as_int(double v, std::string_view axis)
{
    if (v != std::floor(v) || v < 0.0 || v > 1e9)
        throw std::invalid_argument("sweep " + std::string(axis) + ": " + std::to_string(v) +
                                    " is not a non-negative integer");
    return static_cast<int>(v);
}

} // namespace

SweepSpec parse_sweep(std::string_view text)
{
    const auto eq = text.find('=');
    if (eq == std::string_view::npos)
        throw std::invalid_argument("sweep '" + std::string(text) + "' must look like AXIS=v1,v2,...");
    SweepSpec spec;
    spec.axis = parse_axis(trim(text.substr(0, eq)));
    const auto axis = to_string(spec.axis);
    for (auto item : split(text.substr(eq + 1), ','))
    {
        const double v = parse_number(item, axis);
        if (spec.axis == SweepAxis::NPlayers || spec.axis == SweepAxis::CacheCapacity)
            as_int(v, axis);
        if (!spec.values.empty() && v <= spec.values.back())
            throw std::invalid_argument("sweep " + std::string(axis) + ": values must be strictly increasing");
        spec.values.push_back(v);
    }
    return spec;
}

std::vector<Scheme> parse_schemes(std::string_view text)
{
    std::vector<Scheme> out;
    for (auto item : split(text, ','))
    {
        const Scheme s = parse_scheme(trim(item));
        for (Scheme seen : out)
            if (seen == s)
                throw std::invalid_argument("scheme '" + std::string(to_string(s)) + "' listed twice");
        out.push_back(s);
    }
    return out;
}

void apply_sweep_value(ScenarioConfig &cfg, SweepAxis axis, double value)
{
    switch (axis)
    {
    case SweepAxis::NPlayers:
        cfg.n_players = as_int(value, "n_players");
        break;
    case SweepAxis::CacheCapacity:
        cfg.cache_capacity = as_int(value, "cache_capacity");
        break;
    case SweepAxis::ActionIntensity:
        cfg.action_intensity = value;
        break;
    case SweepAxis::DTh:
        cfg.latency.d_th = value * 1e-3;
        break;
    }
}

Preset find_preset(std::string_view name)
{
    const std::vector<Scheme> all{Scheme::Proposed, Scheme::Baseline1, Scheme::Baseline2};
    if (name == "fig3")
        return {"fig3", {SweepAxis::NPlayers, {4, 8, 12, 16}, all}, 16};
    if (name == "fig4")
        return {"fig4", {SweepAxis::DTh, {5, 10, 20, 40}, {Scheme::Proposed}}, 16};
    if (name == "fig5a")
        return {"fig5a", {SweepAxis::CacheCapacity, {0, 8, 32, 128}, all}, 8};
    if (name == "fig5b")
        return {"fig5b", {SweepAxis::ActionIntensity, {0.5, 1, 2, 4, 8}, all}, 16};
    throw std::invalid_argument("unknown preset '" + std::string(name) + "' (expected fig3, fig4, fig5a or fig5b)");
}

std::vector<std::string> preset_names()
{
    return {"fig3", "fig4", "fig5a", "fig5b"};
}

void apply_preset(ScenarioConfig &cfg, const Preset &preset)
{
    cfg.n_players = preset.n_players;
    if (static_cast<int>(cfg.ap_positions.size()) != preset.n_aps)
        cfg.ap_positions.clear();
    cfg.n_aps = preset.n_aps;
    cfg.n_servers = preset.n_servers;
}

} // namespace vrarcade
