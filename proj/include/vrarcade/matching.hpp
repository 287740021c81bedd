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

#ifndef VRARCADE_MATCHING_HPP
#define VRARCADE_MATCHING_HPP

#include "vrarcade/records.hpp"

#include <span>
#include <vector>

namespace vrarcade::radio
{

// A user with a frame ready to send. slack = deadline - now - projected
// remaining compute time.
struct MatchRequest
{
    int user_id = 0;
    double slack = 0.0;
};

// Users are addressed by their index in the request list; user_ids maps back.
struct PreferenceProfile
{
    std::vector<int> user_ids;
    std::vector<std::vector<int>> user_prefs; // per user: AP indices, best first
    std::vector<std::vector<int>> ap_prefs;   // per AP: user indices, best first
    std::vector<int> quota;                   // per AP

    int n_users() const { return static_cast<int>(user_prefs.size()); }
    int n_aps() const { return static_cast<int>(ap_prefs.size()); }
};

// APs rank users by ascending slack, users rank APs by descending rate;
// ties go to the lower id. rates is [user index][AP].
PreferenceProfile build_preferences(std::span<const MatchRequest> requests,
                                    const std::vector<std::vector<double>> &rates, int quota = 1);

struct MatchingResult
{
    std::vector<std::vector<int>> serving; // per user index: serving APs
    std::vector<int> unmatched;            // user indices
    int proposals = 0;
    int mc_granted = 0;
    int mc_starved = 0;

    int load(int ap) const;
};

// User-proposing deferred acceptance with AP quotas (user-optimal stable matching).
MatchingResult deferred_acceptance(const PreferenceProfile &profile);

// Rate-starved users (avg_rate below threshold), poorest first, each get the
// spare AP that adds the most received power, i.e. the largest SINR gain.
// aligned_power_mw is [user index][AP] with both beams on boresight.
// A starved user with no spare AP left bumps mc_starved.
MatchingResult mc_augment(MatchingResult matching, std::span<const double> avg_rates, double threshold,
                          const std::vector<std::vector<double>> &aligned_power_mw, std::span<const int> quota);

struct LatencyCheck
{
    double violation_rate = 0.0;
    bool satisfied = false;
};

// Empirical Pr(d_comp + d_comm >= d_th) against epsilon. Throws
// std::invalid_argument on an empty record list.
LatencyCheck check_latency_constraint(std::span<const DeliveryRecord> records, double d_th, double epsilon);

} // namespace vrarcade::radio

#endif
