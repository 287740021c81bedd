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

#ifndef VRARCADE_SWEEP_HPP
#define VRARCADE_SWEEP_HPP

#include "vrarcade/config.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vrarcade
{

enum class SweepAxis
{
    NPlayers,
    CacheCapacity,
    ActionIntensity,
    DTh
};

std::string_view to_string(SweepAxis axis);
// Throws std::invalid_argument naming the axis.
SweepAxis parse_axis(std::string_view name);

struct SweepSpec
{
    SweepAxis axis = SweepAxis::NPlayers;
    std::vector<double> values; // d_th in milliseconds
    std::vector<Scheme> schemes{Scheme::Proposed, Scheme::Baseline1, Scheme::Baseline2};
};

// "AXIS=v1,v2,..." with strictly increasing values. Throws std::invalid_argument.
SweepSpec parse_sweep(std::string_view text);
// Comma-separated scheme names, no duplicates. Throws std::invalid_argument.
std::vector<Scheme> parse_schemes(std::string_view text);
// Throws std::invalid_argument for non-integral values on integer axes.
void apply_sweep_value(ScenarioConfig &cfg, SweepAxis axis, double value);

struct Preset
{
    std::string name;
    SweepSpec sweep;
    int n_players = 16; // fixed when the sweep is over another axis
    int n_aps = 4;
    int n_servers = 8;
};

// fig3, fig4, fig5a, fig5b. Throws std::invalid_argument for other names.
Preset find_preset(std::string_view name);
std::vector<std::string> preset_names();
void apply_preset(ScenarioConfig &cfg, const Preset &preset);

} // namespace vrarcade

#endif
