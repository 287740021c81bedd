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

#ifndef VRARCADE_CONFIG_HPP
#define VRARCADE_CONFIG_HPP

#include "vrarcade/types.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace vrarcade
{

// Raised for any scenario problem; field() names the offending key.
class ConfigError : public std::invalid_argument
{
  public:
    ConfigError(std::string field, const std::string &what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field))
    {
    }
    const std::string &field() const noexcept { return field_; }

  private:
    std::string field_;
};

struct PodGrid
{
    int rows = 4;
    int cols = 4;
};

struct LatencyConstraint
{
    double d_th = 20e-3; // seconds
    double epsilon = 0.01;
};

// Full experiment parameterization. Units: meters, seconds, Hz, dB/dBm, bit/s.
struct ScenarioConfig
{
    // arena
    double arena_width = 8.0;
    double arena_depth = 8.0;
    PodGrid pod_grid;
    int n_aps = 4;
    std::vector<Vec3> ap_positions; // empty: evenly spaced along the walls, ceiling height
    double ap_height = 3.0;
    double ap_jitter = 0.25; // per-replication placement jitter along the wall, meters

    // edge computing
    int n_servers = 4;
    double server_rate = 400.0; // HD frames per second per server
    int cache_capacity = 64;    // frames
    int prediction_window = 40; // slots
    int top_k = 3;
    int reserved_servers = 1; // kept free of proactive work (at most n_servers - 1)

    // workload
    int n_players = 16;
    int n_actions = 100;
    double zipf_z = 0.8;
    double action_intensity = 1.0; // actions per player per second
    double impact_density = 0.25;
    double popularity_alpha = 1.0;
    double frame_rate = 120.0;
    std::optional<double> hd_size; // bits; default rate_requirement / frame_rate

    // radio
    double carrier_freq = 60e9;
    double bandwidth = 2.16e9;
    double tx_power = 10.0;
    double noise_figure = 10.0;
    AntennaPattern antenna;
    std::optional<double> blockage_loss; // dB; unset: drawn per replication from [20, 35]
    double body_radius = 0.3;
    double self_block_cone = 120.0; // degrees
    double rate_requirement = 2e9;
    std::optional<double> mc_rate_threshold; // default rate_requirement
    double avg_rate_smoothing = 0.1;

    // mobility
    double player_height = 1.7;
    double max_speed = 1.0;  // m/s
    double head_sigma = 10.0; // degrees per slot

    // constraint and measurement
    LatencyConstraint latency;
    double reliability_threshold = 10e-3;

    // run control
    double slot_duration = 0.5e-3;
    double sim_duration = 2.0;
    double warmup_fraction = 0.1;
    int n_replications = 50;
    Scheme scheme = Scheme::Proposed;
    std::uint64_t seed = 1;
};

// A scenario that passed validation, with every default resolved and the
// static geometry laid out.
struct ValidatedScenario
{
    ScenarioConfig config;
    std::vector<Vec3> pod_centers;  // row-major, player height
    std::vector<Vec3> ap_positions; // before per-replication jitter
    double pod_width = 0.0;
    double pod_depth = 0.0;
    double hd_size = 0.0;         // bits
    double compute_demand = 0.0;  // seconds of one server per HD frame
    double mc_rate_threshold = 0.0;
};

ValidatedScenario validate_config(const ScenarioConfig &raw);

// JSON scenario documents. Unknown keys are rejected.
ScenarioConfig config_from_json(const nlohmann::json &doc);
ScenarioConfig load_config(const std::filesystem::path &path);
nlohmann::json config_to_json(const ScenarioConfig &cfg);
// The resolved form written next to results.
nlohmann::json scenario_to_json(const ValidatedScenario &scenario);

} // namespace vrarcade

#endif
