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

#ifndef VRARCADE_CAPACITY_HPP
#define VRARCADE_CAPACITY_HPP

namespace vrarcade
{

// Raw pixel rate for a display that covers fov_h x fov_v degrees at
// ppd pixels per degree, per eye, refreshed fps times a second.
double pixel_rate(double fov_h, double fov_v, double ppd, double eyes, double fps);

// Compressed video bit rate: pixel_rate * bits_per_pixel / compression.
// Throws std::invalid_argument unless every input is positive.
double required_bitrate(double fov_h, double fov_v, double ppd, double eyes, double fps, double bits_per_pixel,
                        double compression);

} // namespace vrarcade

#endif
