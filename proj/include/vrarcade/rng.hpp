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

#ifndef VRARCADE_RNG_HPP
#define VRARCADE_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace vrarcade
{

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent stream named by a tuple of integers, e.g. (seed, replication, stream id, player).
inline Rng make_stream(std::initializer_list<std::uint64_t> path)
{
    std::uint64_t h = 0x6a09e667f3bcc908ULL;
    for (auto v : path)
        h = splitmix64(h ^ splitmix64(v));
    return Rng(h);
}

// Uniform double in [0, 1) from 53 random bits; unlike std::uniform_real_distribution
// the draw count and mapping are fixed across standard libraries.
inline double uniform01(Rng &rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

namespace stream
{
constexpr std::uint64_t topology = 1;
constexpr std::uint64_t workload = 2;
constexpr std::uint64_t mobility = 3;
} // namespace stream

} // namespace vrarcade

#endif
