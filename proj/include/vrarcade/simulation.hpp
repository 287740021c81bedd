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

#ifndef VRARCADE_SIMULATION_HPP
#define VRARCADE_SIMULATION_HPP

#include "vrarcade/compute.hpp"
#include "vrarcade/config.hpp"
#include "vrarcade/records.hpp"
#include "vrarcade/rng.hpp"
#include "vrarcade/workload.hpp"

#include <cstdint>
#include <deque>
#include <optional>
#include <ostream>
#include <unordered_map>
#include <vector>

namespace vrarcade::engine
{

// Optional CSV trace outputs. Rows only; the caller writes headers.
struct TraceSinks
{
    std::ostream *links = nullptr;    // slot,player,ap,blocked,sinr_db,rate_bps
    std::ostream *compute = nullptr;  // slot,task_class,player,d_comp,cache_hit,invalidations
    std::ostream *matching = nullptr; // slot,user,serving_aps,slack_ms,rate_bps
};

inline constexpr const char *links_trace_header = "slot,player,ap,blocked,sinr_db,rate_bps";
inline constexpr const char *compute_trace_header = "slot,task_class,player,d_comp,cache_hit,invalidations";
inline constexpr const char *matching_trace_header = "slot,user,serving_aps,slack_ms,rate_bps";

// Counters over frames requested after warm-up, plus run-wide anomaly counts.
struct ReplicationStats
{
    std::int64_t requests = 0;
    std::int64_t hd = 0;
    std::int64_t fallbacks = 0;
    std::int64_t cache_hits = 0;
    std::int64_t rerenders = 0;
    std::int64_t actions = 0;
    std::int64_t invalidations = 0;
    std::int64_t proactive_tasks = 0;
    std::int64_t mc_grants = 0;
    std::int64_t mc_starved = 0;
    std::int64_t clamped_distances = 0;
};

struct Pose
{
    Vec3 position;
    double head_azimuth = 0.0;
};

// One replication of the arcade, advanced a slot at a time.
class Simulation
{
  public:
    Simulation(const ValidatedScenario &scenario, int replication, TraceSinks trace = {});

    // Runs one slot and returns the frames resolved in it (warm-up frames excluded).
    std::vector<DeliveryRecord> step();

    // Stop issuing new frame requests; pending frames still resolve.
    void stop_requests() { generating_ = false; }
    bool has_pending() const;

    std::int64_t slot() const { return slot_; }
    double clock() const { return static_cast<double>(slot_) * cfg().slot_duration; }
    int n_players() const { return static_cast<int>(players_.size()); }
    const ImpulseCatalog &catalog() const { return catalog_; }
    const ReplicationStats &stats() const { return stats_; }
    const std::vector<Vec3> &ap_positions() const { return aps_; }
    const compute::FrameCache &cache() const { return cache_; }
    const compute::ServerPool &pool() const { return pool_; }
    Pose pose(int player) const { return players_[player].lookahead.front(); }
    Vec3 pod_center(int player) const { return players_[player].pod_center; }
    double pod_half_width() const { return scenario_.pod_width / 2.0; }
    double pod_half_depth() const { return scenario_.pod_depth / 2.0; }
    double avg_rate(int player) const { return players_[player].avg_rate; }
    std::int64_t warmup_slots() const { return warmup_slots_; }
    double blockage_loss() const { return blockage_loss_; }

  private:
    struct PendingFrame
    {
        compute::FrameTask request;
        std::int64_t arrival_slot = 0;
        std::uint64_t task_id = 0;
        std::optional<double> ready_time;
        double remaining_bits = 0.0;
        bool delivered = false;
        double delivery_time = 0.0;
        int serving_set_size = 0;
    };

    struct Player
    {
        Vec3 pod_center;
        std::deque<Pose> lookahead; // poses for slots now .. now + prediction_window
        Vec3 waypoint;
        double speed = 0.0;
        double avg_rate = 0.0;
        double phase = 0.0; // slots
        std::int64_t next_frame = 0;
        std::optional<PendingFrame> pending;
        Rng rng;
    };

    const ScenarioConfig &cfg() const { return scenario_.config; }
    std::int64_t frame_slot(const Player &p, std::int64_t frame) const;
    Pose next_pose(Player &p, const Pose &from);
    void draw_waypoint(Player &p);
    void serve(int u, int invalidations);
    void rerender(int u, int invalidations);
    void emit(std::vector<DeliveryRecord> &out, const DeliveryRecord &r);
    void transmit(double now);
    void finish_compute(double now, double until);
    void resolve(double slot_end, std::vector<DeliveryRecord> &out);

    ValidatedScenario scenario_;
    TraceSinks trace_;
    std::vector<Vec3> aps_;
    ImpulseCatalog catalog_;
    PopularityEstimate popularity_;
    std::vector<compute::ActionContext> contexts_;
    compute::FrameCache cache_;
    compute::ServerPool pool_;
    std::vector<Player> players_;
    std::unordered_map<std::uint64_t, int> waiting_; // task id -> player
    Rng workload_;
    std::uint64_t next_task_id_ = 1;
    std::int64_t slot_ = 0;
    std::int64_t warmup_slots_ = 0;
    double period_slots_ = 0.0;
    double noise_dbm_ = 0.0;
    double blockage_loss_ = 0.0; // dB, this replication
    bool generating_ = true;
    ReplicationStats stats_;
};

struct ReplicationResult
{
    std::vector<DeliveryRecord> records;
    ReplicationStats stats;
    double observed_seconds = 0.0; // measured (post warm-up) request window
    int n_players = 0;
};

// Fresh topology for (seed, replication); runs sim_duration, then lets the
// frames still in flight resolve.
ReplicationResult run_replication(const ValidatedScenario &scenario, int replication, TraceSinks trace = {});

} // namespace vrarcade::engine

#endif
