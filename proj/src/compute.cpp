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

#include "vrarcade/compute.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace vrarcade::compute
{

PoseKey quantize_pose(const Vec3 &position, double head_azimuth)
{
    const double az_deg = normalize_angle(head_azimuth) * 180.0 / M_PI;
    return {static_cast<std::int32_t>(std::floor(position.x / pose_grid)),
            static_cast<std::int32_t>(std::floor(position.y / pose_grid)),
            static_cast<std::int32_t>(std::floor(az_deg / azimuth_bin_deg))};
}

bool task_precedes(const FrameTask &a, const FrameTask &b)
{
    return std::tie(a.cls, a.deadline, a.id) < std::tie(b.cls, b.deadline, b.id);
}

// ---------------------------------------------------------------- servers

ServerPool::ServerPool(int n_servers, double server_rate)
{
    if (n_servers < 1)
        throw std::invalid_argument("ServerPool: need at least one server");
    for (int i = 0; i < n_servers; ++i)
        servers_.push_back({i, server_rate, 0.0, std::nullopt});
}

void ServerPool::sort_queue()
{
    std::stable_sort(queue_.begin(), queue_.end(), task_precedes);
}

void ServerPool::enqueue(FrameTask task)
{
    task.status = TaskStatus::Queued;
    auto pos = std::upper_bound(queue_.begin(), queue_.end(), task, task_precedes);
    queue_.insert(pos, std::move(task));
}

double ServerPool::free_at(const MecServerState &s, double now) const
{
    return s.running ? s.busy_until : std::max(s.busy_until, now);
}

std::optional<double> ServerPool::projected_completion(std::uint64_t id, double now) const
{
    for (const auto &s : servers_)
        if (s.running && s.running->id == id)
            return s.busy_until;
    std::vector<double> free(servers_.size());
    for (std::size_t i = 0; i < servers_.size(); ++i)
        free[i] = free_at(servers_[i], now);
    for (const auto &t : queue_)
    {
        auto it = std::min_element(free.begin(), free.end());
        *it += t.compute_demand;
        if (t.id == id)
            return *it;
    }
    return std::nullopt;
}

std::vector<CompletedTask> ServerPool::advance(double now, double until)
{
    std::vector<CompletedTask> done;
    for (;;)
    {
        // Earliest pending event: a running task finishing by `until`, or an
        // idle server able to start the queue head before `until`.
        MecServerState *next = nullptr;
        double when = std::numeric_limits<double>::infinity();
        for (auto &s : servers_)
        {
            double t;
            if (s.running)
            {
                if (s.busy_until > until)
                    continue;
                t = s.busy_until;
            }
            else
            {
                if (queue_.empty())
                    continue;
                t = std::max(s.busy_until, now);
                if (t >= until)
                    continue;
            }
            if (t < when)
            {
                when = t;
                next = &s;
            }
        }
        if (!next)
            break;
        if (next->running)
        {
            CompletedTask c{*next->running, next->id, next->busy_until - next->running->compute_demand,
                            next->busy_until};
            c.task.status = TaskStatus::Ready;
            done.push_back(std::move(c));
            next->running.reset();
        }
        else
        {
            FrameTask t = std::move(queue_.front());
            queue_.erase(queue_.begin());
            t.status = TaskStatus::Computing;
            next->busy_until = when + t.compute_demand;
            next->running = std::move(t);
        }
    }
    return done;
}

bool ServerPool::cancel_queued(std::uint64_t id)
{
    return remove_queued_if([id](const FrameTask &t) { return t.id == id; }) > 0;
}

bool ServerPool::promote(std::uint64_t id, double deadline)
{
    for (auto &t : queue_)
        if (t.id == id)
        {
            t.cls = TaskClass::RealTime;
            t.deadline = deadline;
            sort_queue();
            return true;
        }
    return false;
}

const FrameTask *ServerPool::find_queued(const FrameKey &key) const
{
    for (const auto &t : queue_)
        if (t.key == key)
            return &t;
    return nullptr;
}

const MecServerState *ServerPool::find_running(const FrameKey &key) const
{
    for (const auto &s : servers_)
        if (s.running && s.running->key == key)
            return &s;
    return nullptr;
}

int ServerPool::proactive_in_flight() const
{
    int n = 0;
    for (const auto &t : queue_)
        n += t.cls == TaskClass::Proactive;
    for (const auto &s : servers_)
        n += s.running && s.running->cls == TaskClass::Proactive;
    return n;
}

int ServerPool::idle_capacity(double now, double slot_end) const
{
    int n = 0;
    for (const auto &s : servers_)
        n += free_at(s, now) <= slot_end;
    return std::max(0, n - static_cast<int>(queue_.size()));
}

void enqueue_tasks(ServerPool &pool, std::vector<FrameTask> tasks)
{
    for (auto &t : tasks)
        pool.enqueue(std::move(t));
}

// ---------------------------------------------------------------- cache

bool FrameCache::insert(const CacheEntry &entry)
{
    if (size() >= capacity_ || contains(entry.key))
        return false;
    entries_.emplace(entry.key, entry);
    return true;
}

// ---------------------------------------------------------------- proactive planning

double frame_utility(const FrameKey &key, double request_time, const PlanInputs &in)
{
    if (request_time <= in.now)
        return 0.0;
    const ActionContext &cur = in.contexts[key.player];
    if (key.context == cur)
        return 1.0;
    if (key.context.generation == cur.generation + 1 && key.context.last_action >= 0 &&
        in.catalog->affects(key.player, key.context.last_action))
        return in.popularity->probability(key.context.last_action);
    return 0.0;
}

namespace
{

struct Candidate
{
    FrameKey key;
    double utility;
    double request_time;
};

bool candidate_before(const Candidate &a, const Candidate &b)
{
    if (a.utility != b.utility)
        return a.utility > b.utility;
    if (a.request_time != b.request_time)
        return a.request_time < b.request_time;
    return a.key < b.key;
}

} // namespace

PlanResult proactive_plan(const PlanInputs &in, FrameCache &cache, const ServerPool &pool, std::uint64_t &next_id)
{
    PlanResult out;
    const int reserve = std::min(in.reserved_servers, static_cast<int>(pool.servers().size()) - 1);
    int server_slots = pool.idle_capacity(in.now, in.slot_end) - std::max(0, reserve);
    if (cache.capacity() <= 0 || server_slots <= 0 || in.frames.empty())
        return out;

    // Actions by estimated popularity, most popular first.
    const int n_actions = in.catalog->n_actions();
    std::vector<int> by_popularity(n_actions);
    for (int i = 0; i < n_actions; ++i)
        by_popularity[i] = i;
    std::stable_sort(by_popularity.begin(), by_popularity.end(), [&](int a, int b) {
        return in.popularity->probability(a) > in.popularity->probability(b);
    });

    std::vector<std::vector<int>> top(in.contexts.size());
    std::vector<Candidate> cands;
    for (const auto &f : in.frames)
    {
        const ActionContext cur = in.contexts[f.player];
        FrameKey base{f.player, f.frame_index, f.pose, cur};
        cands.push_back({base, frame_utility(base, f.request_time, in), f.request_time});
        auto &picks = top[f.player];
        if (picks.empty() && in.top_k > 0)
        {
            for (int a : by_popularity)
            {
                if (in.catalog->affects(f.player, a))
                    picks.push_back(a);
                if (static_cast<int>(picks.size()) == in.top_k)
                    break;
            }
        }
        for (int a : picks)
        {
            FrameKey k = base;
            k.context = after_action(cur, a);
            cands.push_back({k, frame_utility(k, f.request_time, in), f.request_time});
        }
    }
    std::sort(cands.begin(), cands.end(), candidate_before);

    int free_space = cache.capacity() - cache.size() - pool.proactive_in_flight();
    for (const auto &c : cands)
    {
        if (server_slots <= 0 || c.utility <= 0.0)
            break;
        if (cache.contains(c.key) || pool.find_queued(c.key) || pool.find_running(c.key))
            continue;
        if (free_space <= 0)
        {
            const CacheEntry *victim = nullptr;
            double victim_utility = 0.0;
            for (const auto &[key, e] : cache.entries())
            {
                const double u = frame_utility(key, e.request_time, in);
                if (!victim || u < victim_utility ||
                    (u == victim_utility && e.insertion_slot < victim->insertion_slot))
                {
                    victim = &e;
                    victim_utility = u;
                }
            }
            if (!victim || victim_utility >= c.utility)
                break;
            cache.erase(victim->key);
            ++out.evicted;
            ++free_space;
        }
        FrameTask t;
        t.id = next_id++;
        t.key = c.key;
        t.cls = TaskClass::Proactive;
        t.compute_demand = in.compute_demand;
        t.hd_size = in.hd_size;
        t.created = in.now;
        t.deadline = c.request_time;
        out.tasks.push_back(t);
        --free_space;
        --server_slots;
    }
    return out;
}

InvalidationResult invalidate_on_action(int action, const ImpulseCatalog &catalog, std::span<ActionContext> contexts,
                                        FrameCache &cache, ServerPool &pool)
{
    if (action < 0 || action >= catalog.n_actions())
        throw std::invalid_argument("invalidate_on_action: action index out of range");
    InvalidationResult r;
    for (int u : catalog.affected(action))
    {
        if (u >= static_cast<int>(contexts.size()))
            continue;
        const ActionContext now_ctx = after_action(contexts[u], action);
        contexts[u] = now_ctx;
        r.cache_removed += cache.erase_player_if(u, [&](const CacheEntry &e) { return e.key.context != now_ctx; });
        r.queued_removed += pool.remove_queued_if([&](const FrameTask &t) {
            return t.cls == TaskClass::Proactive && t.key.player == u && t.key.context != now_ctx;
        });
    }
    return r;
}

ServeOutcome serve_frame(const FrameTask &request, FrameCache &cache, ServerPool &pool, double now)
{
    if (request.cls != TaskClass::RealTime)
        throw std::invalid_argument("serve_frame: request must be RealTime");
    if (cache.erase(request.key))
        return {FrameSource::CacheHit, 0.0, 0};
    if (const auto *s = pool.find_running(request.key))
        return {FrameSource::Computed, s->busy_until - now, s->running->id};
    std::uint64_t id = request.id;
    if (const auto *q = pool.find_queued(request.key))
    {
        id = q->id;
        pool.promote(id, request.deadline);
    }
    else
        pool.enqueue(request);
    return {FrameSource::Computed, *pool.projected_completion(id, now) - now, id};
}

bool misses_deadline(const FrameTask &request, std::optional<double> delivery_time)
{
    return !delivery_time || *delivery_time >= request.deadline - deadline_tolerance;
}

DeliveryRecord local_fallback(const FrameTask &request, std::optional<double> ready_time, double now, double d_th,
                              std::int64_t arrival_slot)
{
    DeliveryRecord r;
    r.player = request.key.player;
    r.frame_index = request.key.frame_index;
    const double elapsed = std::max(now - request.created, d_th);
    r.d_comp = ready_time ? std::clamp(*ready_time - request.created, 0.0, elapsed) : elapsed;
    r.d_comm = elapsed - r.d_comp;
    // A fallen-back frame always counts against the delay threshold.
    while (r.d_comp + r.d_comm < d_th)
        r.d_comm = std::nextafter(r.d_comm, std::numeric_limits<double>::infinity());
    r.d_total = r.d_comp + r.d_comm;
    r.hd = false;
    r.serving_set_size = 0;
    r.arrival_slot = arrival_slot;
    r.bits = 0.0;
    return r;
}

DeliveryRecord hd_record(const FrameTask &request, double ready_time, double delivery_time, int serving_set_size,
                         std::int64_t arrival_slot)
{
    DeliveryRecord r;
    r.player = request.key.player;
    r.frame_index = request.key.frame_index;
    r.d_comp = ready_time - request.created;
    r.d_comm = delivery_time - ready_time;
    r.d_total = r.d_comp + r.d_comm;
    r.hd = true;
    r.serving_set_size = serving_set_size;
    r.arrival_slot = arrival_slot;
    r.bits = request.hd_size;
    return r;
}

} // namespace vrarcade::compute
