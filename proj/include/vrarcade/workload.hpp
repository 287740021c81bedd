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

#ifndef VRARCADE_WORKLOAD_HPP
#define VRARCADE_WORKLOAD_HPP

#include "vrarcade/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace vrarcade
{

// p_i = i^-z / sum_k k^-z for i = 1..n (index 0 holds rank 1).
std::vector<double> zipf_pmf(int n, double z);

// Zipf-popular impulse actions and the binary players x actions impact matrix.
class ImpulseCatalog
{
  public:
    ImpulseCatalog(std::vector<double> pmf, int n_players, std::vector<std::uint8_t> theta);

    int n_actions() const { return static_cast<int>(pmf_.size()); }
    int n_players() const { return n_players_; }
    const std::vector<double> &pmf() const { return pmf_; }
    bool affects(int player, int action) const { return theta_[static_cast<std::size_t>(player) * pmf_.size() + action] != 0; }
    // Players affected by an action, ascending.
    const std::vector<int> &affected(int action) const { return affected_[action]; }
    // Inverse-CDF draw of an action index.
    int draw_action(Rng &rng) const;

  private:
    std::vector<double> pmf_;
    std::vector<double> cdf_;
    int n_players_;
    std::vector<std::uint8_t> theta_; // row-major [player][action]
    std::vector<std::vector<int>> affected_;
};

// Theta drawn i.i.d. Bernoulli(impact_density) per (player, action); an
// action column with no affected player is redrawn.
ImpulseCatalog make_catalog(int n_actions, double zipf_z, int n_players, double impact_density, Rng &rng);

struct ArrivalEvent
{
    int action = 0;
    double offset = 0.0; // seconds into the slot

    friend bool operator==(const ArrivalEvent &, const ArrivalEvent &) = default;
};

// Impulse actions arriving during one slot of length dt: Poisson count with
// mean lambda * dt * n_players, i.i.d. actions from the catalog pmf, sorted by offset.
std::vector<ArrivalEvent> sample_arrivals(double lambda, double dt, const ImpulseCatalog &catalog, int n_players,
                                          Rng &rng);

// Empirical action popularity with additive smoothing.
struct PopularityEstimate
{
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;
    double alpha = 1.0;

    static PopularityEstimate uniform(int n_actions, double alpha);
    double probability(int action) const;
    std::vector<double> pmf() const;
};

// Throws std::invalid_argument for an index outside the action set.
PopularityEstimate update_popularity(PopularityEstimate est, int action);

} // namespace vrarcade

#endif
