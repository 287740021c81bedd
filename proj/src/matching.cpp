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

#include "vrarcade/matching.hpp"

#include "vrarcade/compute.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace vrarcade::radio
{

PreferenceProfile build_preferences(std::span<const MatchRequest> requests,
                                    const std::vector<std::vector<double>> &rates, int quota)
{
    const int n_users = static_cast<int>(requests.size());
    if (static_cast<int>(rates.size()) != n_users)
        throw std::invalid_argument("build_preferences: one rate row per request required");
    const int n_aps = n_users ? static_cast<int>(rates.front().size()) : 0;

    PreferenceProfile p;
    p.user_ids.reserve(n_users);
    for (const auto &r : requests)
        p.user_ids.push_back(r.user_id);

    p.user_prefs.resize(n_users);
    for (int u = 0; u < n_users; ++u)
    {
        if (static_cast<int>(rates[u].size()) != n_aps)
            throw std::invalid_argument("build_preferences: ragged rate matrix");
        auto &pref = p.user_prefs[u];
        pref.resize(n_aps);
        std::iota(pref.begin(), pref.end(), 0);
        std::stable_sort(pref.begin(), pref.end(), [&](int a, int b) { return rates[u][a] > rates[u][b]; });
    }

    std::vector<int> by_slack(n_users);
    std::iota(by_slack.begin(), by_slack.end(), 0);
    std::sort(by_slack.begin(), by_slack.end(), [&](int a, int b) {
        if (requests[a].slack != requests[b].slack)
            return requests[a].slack < requests[b].slack;
        return requests[a].user_id < requests[b].user_id;
    });
    p.ap_prefs.assign(n_aps, by_slack);
    p.quota.assign(n_aps, quota);
    return p;
}

int MatchingResult::load(int ap) const
{
    int n = 0;
    for (const auto &s : serving)
        n += static_cast<int>(std::count(s.begin(), s.end(), ap));
    return n;
}

MatchingResult deferred_acceptance(const PreferenceProfile &profile)
{
    const int n_users = profile.n_users();
    const int n_aps = profile.n_aps();

    // rank[a][u]: position of user u in AP a's list; users missing from it are unacceptable.
    std::vector<std::vector<int>> rank(n_aps, std::vector<int>(n_users, -1));
    for (int a = 0; a < n_aps; ++a)
        for (int pos = 0; pos < static_cast<int>(profile.ap_prefs[a].size()); ++pos)
            rank[a][profile.ap_prefs[a][pos]] = pos;

    std::vector<std::vector<int>> held(n_aps);
    std::vector<int> next_choice(n_users, 0);
    std::vector<int> match(n_users, -1);
    std::deque<int> free_users(n_users);
    std::iota(free_users.begin(), free_users.end(), 0);

    MatchingResult out;
    while (!free_users.empty())
    {
        const int u = free_users.front();
        free_users.pop_front();
        const auto &prefs = profile.user_prefs[u];
        if (next_choice[u] >= static_cast<int>(prefs.size()))
            continue; // exhausted: stays unmatched
        const int a = prefs[next_choice[u]++];
        ++out.proposals;
        if (rank[a][u] < 0 || profile.quota[a] <= 0)
        {
            free_users.push_front(u);
            continue;
        }
        auto &h = held[a];
        if (static_cast<int>(h.size()) < profile.quota[a])
        {
            h.push_back(u);
            match[u] = a;
            continue;
        }
        auto worst = std::max_element(h.begin(), h.end(), [&](int x, int y) { return rank[a][x] < rank[a][y]; });
        if (rank[a][u] < rank[a][*worst])
        {
            const int bumped = *worst;
            *worst = u;
            match[u] = a;
            match[bumped] = -1;
            free_users.push_front(bumped);
        }
        else
            free_users.push_front(u);
    }

    out.serving.resize(n_users);
    for (int u = 0; u < n_users; ++u)
    {
        if (match[u] >= 0)
            out.serving[u].push_back(match[u]);
        else
            out.unmatched.push_back(u);
    }
    return out;
}

MatchingResult mc_augment(MatchingResult m, std::span<const double> avg_rates, double threshold,
                          const std::vector<std::vector<double>> &aligned_power_mw, std::span<const int> quota)
{
    const int n_users = static_cast<int>(m.serving.size());
    const int n_aps = static_cast<int>(quota.size());
    std::vector<int> load(n_aps, 0);
    for (const auto &s : m.serving)
        for (int a : s)
            ++load[a];

    std::vector<int> starved;
    for (int u = 0; u < n_users; ++u)
        if (m.serving[u].size() == 1 && avg_rates[u] < threshold)
            starved.push_back(u);
    std::stable_sort(starved.begin(), starved.end(), [&](int a, int b) { return avg_rates[a] < avg_rates[b]; });

    for (int u : starved)
    {
        int best = -1;
        for (int a = 0; a < n_aps; ++a)
        {
            if (load[a] >= quota[a] || a == m.serving[u].front())
                continue;
            if (best < 0 || aligned_power_mw[u][a] > aligned_power_mw[u][best])
                best = a;
        }
        if (best < 0)
        {
            ++m.mc_starved;
            continue;
        }
        m.serving[u].push_back(best);
        ++load[best];
        ++m.mc_granted;
    }
    return m;
}

LatencyCheck check_latency_constraint(std::span<const DeliveryRecord> records, double d_th, double epsilon)
{
    if (records.empty())
        throw std::invalid_argument("check_latency_constraint: no records");
    std::size_t violations = 0;
    for (const auto &r : records)
        violations += (r.d_comp + r.d_comm) >= d_th - compute::deadline_tolerance;
    LatencyCheck c;
    c.violation_rate = static_cast<double>(violations) / static_cast<double>(records.size());
    c.satisfied = c.violation_rate <= epsilon;
    return c;
}

} // namespace vrarcade::radio
