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

#ifndef VRARCADE_TYPES_HPP
#define VRARCADE_TYPES_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vrarcade
{

struct Vec3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Vec3 &, const Vec3 &) = default;
};

inline double distance_2d(const Vec3 &a, const Vec3 &b)
{
    return std::hypot(b.x - a.x, b.y - a.y);
}

inline double distance_3d(const Vec3 &a, const Vec3 &b)
{
    return std::sqrt((b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y) + (b.z - a.z) * (b.z - a.z));
}

// Azimuth of b as seen from a, in the horizontal plane.
inline double azimuth(const Vec3 &a, const Vec3 &b)
{
    return std::atan2(b.y - a.y, b.x - a.x);
}

// Wraps an angle into (-pi, pi].
inline double normalize_angle(double rad)
{
    constexpr double two_pi = 2.0 * M_PI;
    double r = std::fmod(rad, two_pi);
    if (r <= -M_PI)
        r += two_pi;
    else if (r > M_PI)
        r -= two_pi;
    return r;
}

enum class Scheme
{
    Proposed,
    Baseline1,
    Baseline2
};

inline std::string_view to_string(Scheme s)
{
    switch (s)
    {
    case Scheme::Proposed:
        return "Proposed";
    case Scheme::Baseline1:
        return "Baseline1";
    case Scheme::Baseline2:
        return "Baseline2";
    }
    return "?";
}

inline Scheme parse_scheme(std::string_view name)
{
    if (name == "Proposed")
        return Scheme::Proposed;
    if (name == "Baseline1")
        return Scheme::Baseline1;
    if (name == "Baseline2")
        return Scheme::Baseline2;
    throw std::invalid_argument("unknown scheme '" + std::string(name) + "' (expected Proposed, Baseline1 or Baseline2)");
}

// Flat-top sectored antenna.
struct AntennaPattern
{
    double mainlobe_gain = 12.0; // dBi
    double sidelobe_gain = -10.0; // dBi
    double beamwidth = 30.0;      // degrees
};

} // namespace vrarcade

#endif
