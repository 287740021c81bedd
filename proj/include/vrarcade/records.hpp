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

#ifndef VRARCADE_RECORDS_HPP
#define VRARCADE_RECORDS_HPP

#include <cstdint>

namespace vrarcade
{

// Outcome of one frame request. d_total is always d_comp + d_comm.
struct DeliveryRecord
{
    int player = 0;
    std::int64_t frame_index = 0;
    double d_comp = 0.0; // seconds
    double d_comm = 0.0; // seconds
    double d_total = 0.0;
    bool hd = false;          // false: the HMD rendered a low-resolution fallback
    int serving_set_size = 0; // APs that carried the final slot of the frame
    std::int64_t arrival_slot = 0;
    double bits = 0.0; // HD bits delivered

    friend bool operator==(const DeliveryRecord &, const DeliveryRecord &) = default;
};

} // namespace vrarcade

#endif
