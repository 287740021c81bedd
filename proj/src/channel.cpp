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

#include "vrarcade/channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vrarcade::channel
{

LinkGeometry make_geometry(const Vec3 &ap, const Vec3 &player, double head_azimuth)
{
    LinkGeometry g;
    g.ap_position = ap;
    g.player_position = player;
    g.distance = distance_3d(ap, player);
    g.azimuth_ap_to_player = normalize_angle(azimuth(ap, player));
    g.azimuth_player_to_ap = normalize_angle(azimuth(player, ap));
    g.head_azimuth = normalize_angle(head_azimuth);
    return g;
}

double path_loss_db(double distance, double carrier_hz, bool blocked, double blockage_loss_db)
{
    const double d = std::max(distance, reference_distance);
    const double wavelength = speed_of_light / carrier_hz;
    const double fspl_ref = 20.0 * std::log10(4.0 * M_PI * reference_distance / wavelength);
    double pl = fspl_ref + 10.0 * los_exponent * std::log10(d / reference_distance);
    if (blocked)
        pl += blockage_loss_db;
    return pl;
}

double antenna_gain_db(double offset_rad, const AntennaPattern &pattern)
{
    const double half = pattern.beamwidth * M_PI / 360.0;
    return std::abs(normalize_angle(offset_rad)) <= half ? pattern.mainlobe_gain : pattern.sidelobe_gain;
}

bool body_blocks(const Vec3 &ap, const Vec3 &player, const Vec3 &other, double body_radius)
{
    // Distance from the body axis to the floor-plane segment ap -> player.
    const double sx = player.x - ap.x;
    const double sy = player.y - ap.y;
    const double len2 = sx * sx + sy * sy;
    double t = 0.0;
    if (len2 > 0.0)
        t = std::clamp(((other.x - ap.x) * sx + (other.y - ap.y) * sy) / len2, 0.0, 1.0);
    const double dx = ap.x + t * sx - other.x;
    const double dy = ap.y + t * sy - other.y;
    return dx * dx + dy * dy < body_radius * body_radius;
}

bool self_blocked(double azimuth_player_to_ap, double head_azimuth, double self_block_cone_deg)
{
    if (self_block_cone_deg <= 0.0)
        return false;
    const double rear = head_azimuth + M_PI;
    const double offset = std::abs(normalize_angle(azimuth_player_to_ap - rear));
    return offset <= self_block_cone_deg * M_PI / 360.0;
}

bool blockage_state(const LinkGeometry &link, std::span<const Vec3> others, double body_radius,
                    double self_block_cone_deg)
{
    if (self_blocked(link.azimuth_player_to_ap, link.head_azimuth, self_block_cone_deg))
        return true;
    for (const auto &o : others)
        if (body_blocks(link.ap_position, link.player_position, o, body_radius))
            return true;
    return false;
}

double noise_dbm(double bandwidth_hz, double noise_figure_db)
{
    return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

double dbm_to_mw(double dbm)
{
    return std::pow(10.0, dbm / 10.0);
}

double mw_to_dbm(double mw)
{
    return mw > 0.0 ? 10.0 * std::log10(mw) : -std::numeric_limits<double>::infinity();
}

double sinr_db_mw(double serving_mw, double interference_mw, double noise_mw)
{
    const double denom = noise_mw + interference_mw;
    if (denom <= 0.0)
        return std::numeric_limits<double>::infinity();
    return mw_to_dbm(serving_mw / denom);
}

double sinr_db(std::span<const double> serving_rx_dbm, std::span<const double> interferer_rx_dbm, double noise)
{
    if (serving_rx_dbm.empty())
        throw std::invalid_argument("sinr_db: empty serving set");
    double s = 0.0;
    for (double p : serving_rx_dbm)
        s += dbm_to_mw(p);
    double i = 0.0;
    for (double p : interferer_rx_dbm)
        i += dbm_to_mw(p);
    return sinr_db_mw(s, i, dbm_to_mw(noise));
}

double achievable_rate(double sinr, double bandwidth_hz)
{
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("achievable_rate: bandwidth must be positive");
    if (sinr == -std::numeric_limits<double>::infinity())
        return 0.0;
    return bandwidth_hz * std::log2(1.0 + std::pow(10.0, sinr / 10.0));
}

} // namespace vrarcade::channel
