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

#include "vrarcade/workload.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vrarcade
{

std::vector<double> zipf_pmf(int n, double z)
{
    if (n < 1)
        throw std::invalid_argument("zipf_pmf: n must be >= 1");
    if (!(z >= 0.0))
        throw std::invalid_argument("zipf_pmf: z must be non-negative");
    std::vector<long double> w(n);
    long double norm = 0.0L;
    for (int i = n; i >= 1; --i) // smallest terms first
    {
        w[i - 1] = std::pow(static_cast<long double>(i), -static_cast<long double>(z));
        norm += w[i - 1];
    }
    std::vector<double> p(n);
    for (int i = 0; i < n; ++i)
        p[i] = static_cast<double>(w[i] / norm);
    return p;
}

ImpulseCatalog::ImpulseCatalog(std::vector<double> pmf, int n_players, std::vector<std::uint8_t> theta)
    : pmf_(std::move(pmf)), n_players_(n_players), theta_(std::move(theta))
{
    if (pmf_.empty())
        throw std::invalid_argument("ImpulseCatalog: empty action set");
    if (n_players_ < 0 || theta_.size() != static_cast<std::size_t>(n_players_) * pmf_.size())
        throw std::invalid_argument("ImpulseCatalog: theta must be n_players x n_actions");
    cdf_.resize(pmf_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < pmf_.size(); ++i)
        cdf_[i] = (acc += pmf_[i]);
    affected_.resize(pmf_.size());
    for (int u = 0; u < n_players_; ++u)
        for (int i = 0; i < n_actions(); ++i)
            if (affects(u, i))
                affected_[i].push_back(u);
}

int ImpulseCatalog::draw_action(Rng &rng) const
{
    const double x = uniform01(rng) * cdf_.back();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), x);
    if (it == cdf_.end())
        --it;
    return static_cast<int>(it - cdf_.begin());
}

ImpulseCatalog make_catalog(int n_actions, double zipf_z, int n_players, double impact_density, Rng &rng)
{
    std::vector<std::uint8_t> theta(static_cast<std::size_t>(n_players) * n_actions, 0);
    for (int i = 0; i < n_actions && n_players > 0; ++i)
    {
        bool any = false;
        while (!any)
        {
            for (int u = 0; u < n_players; ++u)
            {
                const bool hit = uniform01(rng) < impact_density;
                theta[static_cast<std::size_t>(u) * n_actions + i] = hit ? 1 : 0;
                any = any || hit;
            }
        }
    }
    return ImpulseCatalog(zipf_pmf(n_actions, zipf_z), n_players, std::move(theta));
}

namespace
{

int poisson(double mean, Rng &rng)
{
    if (mean <= 0.0)
        return 0;
    if (mean > 30.0)
        return std::poisson_distribution<int>(mean)(rng);
    // Knuth: count uniforms until their product drops below e^-mean.
    const double limit = std::exp(-mean);
    int k = 0;
    double prod = uniform01(rng);
    while (prod > limit)
    {
        ++k;
        prod *= uniform01(rng);
    }
    return k;
}

} // namespace

std::vector<ArrivalEvent> sample_arrivals(double lambda, double dt, const ImpulseCatalog &catalog, int n_players,
                                          Rng &rng)
{
    if (lambda < 0.0)
        throw std::invalid_argument("sample_arrivals: lambda must be non-negative");
    std::vector<ArrivalEvent> out;
    const int count = poisson(lambda * dt * n_players, rng);
    out.reserve(count);
    for (int k = 0; k < count; ++k)
    {
        ArrivalEvent ev;
        ev.action = catalog.draw_action(rng);
        ev.offset = uniform01(rng) * dt;
        out.push_back(ev);
    }
    std::stable_sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.offset < b.offset; });
    return out;
}

PopularityEstimate PopularityEstimate::uniform(int n_actions, double alpha)
{
    if (n_actions < 1)
        throw std::invalid_argument("PopularityEstimate: n_actions must be >= 1");
    PopularityEstimate e;
    e.counts.assign(n_actions, 0);
    e.alpha = alpha;
    return e;
}

double PopularityEstimate::probability(int action) const
{
    const double n = static_cast<double>(counts.size());
    const double denom = static_cast<double>(total) + alpha * n;
    if (denom <= 0.0)
        return 1.0 / n; // alpha = 0 and nothing observed yet
    return (static_cast<double>(counts[action]) + alpha) / denom;
}

std::vector<double> PopularityEstimate::pmf() const
{
    std::vector<double> p(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        p[i] = probability(static_cast<int>(i));
    return p;
}

PopularityEstimate update_popularity(PopularityEstimate est, int action)
{
    if (action < 0 || action >= static_cast<int>(est.counts.size()))
        throw std::invalid_argument("update_popularity: action index " + std::to_string(action) + " out of range");
    ++est.counts[action];
    ++est.total;
    return est;
}

} // namespace vrarcade
