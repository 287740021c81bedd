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

#ifndef VRARCADE_COMPUTE_HPP
#define VRARCADE_COMPUTE_HPP

#include "vrarcade/records.hpp"
#include "vrarcade/types.hpp"
#include "vrarcade/workload.hpp"

#include <compare>
#include <limits>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace vrarcade::compute
{

enum class TaskClass : std::uint8_t
{
    RealTime,
    Proactive
};

enum class TaskStatus : std::uint8_t
{
    Queued,
    Computing,
    Cached,
    Ready,
    Delivered,
    FallenBack
};

constexpr double pose_grid = 0.1;       // meters
constexpr double azimuth_bin_deg = 5.0; // degrees

struct PoseKey
{
    std::int32_t qx = 0;
    std::int32_t qy = 0;
    std::int32_t qaz = 0;

    auto operator<=>(const PoseKey &) const = default;
};

PoseKey quantize_pose(const Vec3 &position, double head_azimuth);

// Game state a frame was rendered for: how many impulse actions have touched
// the player, and which one came last.
struct ActionContext
{
    std::uint32_t generation = 0;
    std::int32_t last_action = -1;

    auto operator<=>(const ActionContext &) const = default;
    std::uint64_t hash() const
    {
        return (static_cast<std::uint64_t>(generation) << 32) | static_cast<std::uint32_t>(last_action + 1);
    }
};

inline ActionContext after_action(ActionContext ctx, int action)
{
    return {ctx.generation + 1, action};
}

struct FrameKey
{
    int player = 0;
    std::int64_t frame_index = 0;
    PoseKey pose;
    ActionContext context;

    auto operator<=>(const FrameKey &) const = default;
};

struct FrameTask
{
    std::uint64_t id = 0;
    FrameKey key;
    TaskClass cls = TaskClass::RealTime;
    double compute_demand = 0.0; // seconds of one server
    double hd_size = 0.0;        // bits
    double created = 0.0;        // seconds
    double deadline = 0.0;       // absolute seconds; proactive: the frame's request time
    TaskStatus status = TaskStatus::Queued;
};

struct MecServerState
{
    int id = 0;
    double rate = 0.0;       // HD frames per second
    double busy_until = 0.0; // seconds
    std::optional<FrameTask> running;
};

struct CompletedTask
{
    FrameTask task;
    int server = 0;
    double start = 0.0;
    double finish = 0.0;
};

// MEC servers sharing one priority queue: every RealTime task ahead of any
// Proactive one, earliest deadline first within a class. A free server takes
// the queue head, so each task lands on the server that can finish it first.
// Started tasks run to completion.
class ServerPool
{
  public:
    ServerPool(int n_servers, double server_rate);

    std::span<const MecServerState> servers() const { return servers_; }
    std::span<const FrameTask> queue() const { return queue_; }

    void enqueue(FrameTask task);
    // Completion time the queue model predicts for a queued or running task,
    // assuming no later arrivals; nullopt if the id is unknown.
    std::optional<double> projected_completion(std::uint64_t id, double now) const;
    // Start and finish tasks up to `until`; tasks in the queue are available from `now`.
    std::vector<CompletedTask> advance(double now, double until);

    bool cancel_queued(std::uint64_t id);
    template <class Pred> int remove_queued_if(Pred pred)
    {
        const auto before = queue_.size();
        std::erase_if(queue_, pred);
        return static_cast<int>(before - queue_.size());
    }
    // Reclassify a queued task as RealTime with a new deadline.
    bool promote(std::uint64_t id, double deadline);

    const FrameTask *find_queued(const FrameKey &key) const;
    const MecServerState *find_running(const FrameKey &key) const;
    // Proactive tasks queued or running.
    int proactive_in_flight() const;
    // Servers free by slot_end that no queued task already claims.
    int idle_capacity(double now, double slot_end) const;
    // Time server s next becomes free.
    double free_at(const MecServerState &s, double now) const;

  private:
    void sort_queue();

    std::vector<MecServerState> servers_;
    std::vector<FrameTask> queue_;
};

bool task_precedes(const FrameTask &a, const FrameTask &b);

// Assign tasks to the pool (shared priority queue).
void enqueue_tasks(ServerPool &pool, std::vector<FrameTask> tasks);

struct CacheEntry
{
    FrameKey key;
    std::int64_t insertion_slot = 0;
    double request_time = 0.0; // when the frame will be requested
};

class FrameCache
{
  public:
    explicit FrameCache(int capacity) : capacity_(capacity) {}

    int capacity() const { return capacity_; }
    int size() const { return static_cast<int>(entries_.size()); }
    const std::map<FrameKey, CacheEntry> &entries() const { return entries_; }

    bool contains(const FrameKey &key) const { return entries_.count(key) != 0; }
    // Returns false when full or the key is already present.
    bool insert(const CacheEntry &entry);
    bool erase(const FrameKey &key) { return entries_.erase(key) != 0; }
    template <class Pred> int erase_if(Pred pred)
    {
        return static_cast<int>(std::erase_if(entries_, [&](const auto &kv) { return pred(kv.second); }));
    }
    int erase_player_if(int player, auto pred)
    {
        int n = 0;
        auto it = entries_.lower_bound(FrameKey{player, std::numeric_limits<std::int64_t>::min(), {}, {}});
        while (it != entries_.end() && it->first.player == player)
        {
            if (pred(it->second))
            {
                it = entries_.erase(it);
                ++n;
            }
            else
                ++it;
        }
        return n;
    }

  private:
    int capacity_;
    std::map<FrameKey, CacheEntry> entries_;
};

// A frame the pose predictor says a player will request.
struct PredictedFrame
{
    int player = 0;
    std::int64_t frame_index = 0;
    double request_time = 0.0;
    PoseKey pose;
};

struct PlanInputs
{
    std::span<const PredictedFrame> frames;
    std::span<const ActionContext> contexts; // current context per player
    const ImpulseCatalog *catalog = nullptr;
    const PopularityEstimate *popularity = nullptr;
    int top_k = 3;
    int reserved_servers = 0; // idle servers left for RealTime work
    std::int64_t slot = 0;
    double now = 0.0;
    double slot_end = 0.0;
    double compute_demand = 0.0;
    double hd_size = 0.0;
};

struct PlanResult
{
    std::vector<FrameTask> tasks;
    int evicted = 0;
};

// Expected usefulness of a cached or candidate frame: 1 for the no-action
// continuation of the player's current context, the estimated probability of
// action i for a frame speculatively rendered after i, 0 for anything stale.
double frame_utility(const FrameKey &key, double request_time, const PlanInputs &in);

// Proactive render list for this slot. Candidates are every predicted frame
// in its no-action form plus the top_k most popular actions that affect the
// player, ranked by utility then request time. Emission stops when idle server
// capacity (less reserved_servers, always leaving one server usable) or cache
// space runs out; a full cache gives up its lowest-utility
// entry (oldest first on ties) to a strictly better candidate. Ids are taken
// from next_id.
PlanResult proactive_plan(const PlanInputs &in, FrameCache &cache, const ServerPool &pool, std::uint64_t &next_id);

struct InvalidationResult
{
    int cache_removed = 0;
    int queued_removed = 0;
    int total() const { return cache_removed + queued_removed; }
};

// Advances the context of every player action i affects and drops their
// cached or queued proactive frames rendered for any other context.
InvalidationResult invalidate_on_action(int action, const ImpulseCatalog &catalog,
                                        std::span<ActionContext> contexts, FrameCache &cache, ServerPool &pool);

enum class FrameSource : std::uint8_t
{
    CacheHit,
    Computed
};

struct ServeOutcome
{
    FrameSource source = FrameSource::Computed;
    double d_comp = 0.0;     // projected, seconds from now
    std::uint64_t task_id = 0; // task that will produce the frame; 0 on a hit
};

// A RealTime request: a cache hit consumes the entry; a proactive task
// already rendering the same frame is adopted (and promoted if still
// queued); otherwise the request itself is queued.
ServeOutcome serve_frame(const FrameTask &request, FrameCache &cache, ServerPool &pool, double now);

// Slack for comparing slot-aligned times against deadlines.
constexpr double deadline_tolerance = 1e-12;

// HD delivery succeeds only strictly before the deadline.
bool misses_deadline(const FrameTask &request, std::optional<double> delivery_time);

// Record for a frame whose HD copy missed the deadline; the HMD shows a
// locally rendered low-resolution frame instead, without stalling.
DeliveryRecord local_fallback(const FrameTask &request, std::optional<double> ready_time, double now, double d_th,
                              std::int64_t arrival_slot);

DeliveryRecord hd_record(const FrameTask &request, double ready_time, double delivery_time, int serving_set_size,
                         std::int64_t arrival_slot);

} // namespace vrarcade::compute

#endif
