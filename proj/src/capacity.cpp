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

#include "vrarcade/capacity.hpp"

#include <stdexcept>
#include <string>

namespace vrarcade
{

namespace
{
void positive(double v, const char *name)
{
    if (!(v > 0.0))
        throw std::invalid_argument(std::string(name) + " must be positive");
}
} // namespace

double pixel_rate(double fov_h, double fov_v, double ppd, double eyes, double fps)
{
    positive(fov_h, "fov_h");
    positive(fov_v, "fov_v");
    positive(ppd, "ppd");
    positive(eyes, "eyes");
    positive(fps, "fps");
    return (fov_h * ppd) * (fov_v * ppd) * eyes * fps;
}

double required_bitrate(double fov_h, double fov_v, double ppd, double eyes, double fps, double bits_per_pixel,
                        double compression)
{
    positive(bits_per_pixel, "bits_per_pixel");
    positive(compression, "compression");
    return pixel_rate(fov_h, fov_v, ppd, eyes, fps) * bits_per_pixel / compression;
}

} // namespace vrarcade
