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

#ifndef VRARCADE_CHANNEL_HPP
#define VRARCADE_CHANNEL_HPP

#include "vrarcade/types.hpp"

#include <span>

namespace vrarcade::channel
{

constexpr double speed_of_light = 299792458.0;
constexpr double reference_distance = 1.0; // meters
constexpr double los_exponent = 2.0;

struct LinkGeometry
{
    Vec3 ap_position;
    Vec3 player_position;
    double distance = 0.0;          // 3D, meters
    double azimuth_ap_to_player = 0.0; // radians, (-pi, pi]
    double azimuth_player_to_ap = 0.0;
    double head_azimuth = 0.0;
};

LinkGeometry make_geometry(const Vec3 &ap, const Vec3 &player, double head_azimuth);

struct LinkBudget
{
    bool blocked = false;
    double path_loss = 0.0;    // dB
    double tx_gain = 0.0;      // dB
    double rx_gain = 0.0;      // dB
    double rx_power = 0.0;     // dBm
    double interference = 0.0; // mW
    double sinr = 0.0;         // dB
    double rate = 0.0;         // bit/s
};

// Free-space loss at 1 m plus log-distance decay with exponent 2; a blocked
// link adds blockage_loss. Distances under 1 m are clamped to 1 m.
double path_loss_db(double distance, double carrier_hz, bool blocked, double blockage_loss_db);

// Flat-top sectored pattern: mainlobe for |offset| <= beamwidth / 2 (closed), sidelobe otherwise.
double antenna_gain_db(double offset_rad, const AntennaPattern &pattern);

// True when another player's body (a vertical cylinder, checked in the floor
// plane) cuts the AP-player segment, or when the AP sits inside the rear
// self-blockage cone centred opposite the head azimuth.
bool blockage_state(const LinkGeometry &link, std::span<const Vec3> others, double body_radius,
                    double self_block_cone_deg);

bool body_blocks(const Vec3 &ap, const Vec3 &player, const Vec3 &other, double body_radius);
bool self_blocked(double azimuth_player_to_ap, double head_azimuth, double self_block_cone_deg);

double noise_dbm(double bandwidth_hz, double noise_figure_db);
double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);

// Non-coherent multisource SINR: summed serving power over noise plus summed
// power of active APs outside the serving set. Powers in dBm. Throws
// std::invalid_argument for an empty serving set.
double sinr_db(std::span<const double> serving_rx_dbm, std::span<const double> interferer_rx_dbm, double noise_dbm);

// Same, with linear powers in mW.
double sinr_db_mw(double serving_mw, double interference_mw, double noise_mw);

// Shannon rate B * log2(1 + SINR).
double achievable_rate(double sinr_db, double bandwidth_hz);

} // namespace vrarcade::channel

#endif
