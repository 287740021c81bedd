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

#include "vrarcade/simulation.hpp"

#include "vrarcade/channel.hpp"
#include "vrarcade/matching.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace vrarcade::engine
{

namespace
{

double gaussian(Rng &rng)
{
    const double u1 = 1.0 - uniform01(rng); // (0, 1]
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double uniform_in(Rng &rng, double lo, double hi)
{
    return lo + (hi - lo) * uniform01(rng);
}

// Shift an AP along the wall it is mounted on (both axes if it is not on one).
Vec3 jitter_ap(Vec3 ap, double jitter, double width, double depth, Rng &rng)
{
    const double dx = uniform_in(rng, -jitter, jitter);
    const double dy = uniform_in(rng, -jitter, jitter);
    const bool on_x_wall = ap.x <= 0.0 || ap.x >= width;
    const bool on_y_wall = ap.y <= 0.0 || ap.y >= depth;
    if (!on_x_wall)
        ap.x = std::clamp(ap.x + dx, 0.0, width);
    if (!on_y_wall)
        ap.y = std::clamp(ap.y + dy, 0.0, depth);
    return ap;
}

const char *class_name(compute::TaskClass c)
{
    return c == compute::TaskClass::RealTime ? "realtime" : "proactive";
}

} // namespace

Simulation::Simulation(const ValidatedScenario &scenario, int replication, TraceSinks trace)
    : scenario_(scenario), trace_(trace),
      catalog_(std::vector<double>{1.0}, 0, {}),
      popularity_(PopularityEstimate::uniform(scenario.config.n_actions, scenario.config.popularity_alpha)),
      cache_(scenario.config.cache_capacity), pool_(scenario.config.n_servers, scenario.config.server_rate)
{
    const auto &c = cfg();
    const auto rep = static_cast<std::uint64_t>(replication);
    Rng topo = make_stream({c.seed, rep, stream::topology});
    workload_ = make_stream({c.seed, rep, stream::workload});

    for (const auto &ap : scenario_.ap_positions)
        aps_.push_back(c.ap_jitter > 0.0 ? jitter_ap(ap, c.ap_jitter, c.arena_width, c.arena_depth, topo) : ap);

    // Random subset of pods, one player each.
    std::vector<int> pods(scenario_.pod_centers.size());
    std::iota(pods.begin(), pods.end(), 0);
    for (std::size_t i = pods.size(); i > 1; --i)
    {
        const auto j = static_cast<std::size_t>(uniform01(topo) * static_cast<double>(i));
        std::swap(pods[i - 1], pods[std::min(j, i - 1)]);
    }

    catalog_ = make_catalog(c.n_actions, c.zipf_z, c.n_players, c.impact_density, topo);
    contexts_.assign(c.n_players, {});
    period_slots_ = 1.0 / (c.frame_rate * c.slot_duration);
    noise_dbm_ = channel::noise_dbm(c.bandwidth, c.noise_figure);

    const auto total_slots = static_cast<std::int64_t>(std::llround(c.sim_duration / c.slot_duration));
    warmup_slots_ = static_cast<std::int64_t>(std::llround(c.warmup_fraction * static_cast<double>(total_slots)));

    players_.resize(c.n_players);
    for (int u = 0; u < c.n_players; ++u)
    {
        Player &p = players_[u];
        p.pod_center = scenario_.pod_centers[pods[u]];
        p.phase = uniform01(topo) * period_slots_;
        p.rng = make_stream({c.seed, rep, stream::mobility, static_cast<std::uint64_t>(u)});
        Pose start{p.pod_center, normalize_angle(uniform_in(p.rng, -M_PI, M_PI))};
        draw_waypoint(p);
        p.lookahead.push_back(start);
        for (int k = 0; k < c.prediction_window; ++k)
            p.lookahead.push_back(next_pose(p, p.lookahead.back()));
    }
    const double drawn_loss = uniform_in(topo, 20.0, 35.0); // drawn even when configured
    blockage_loss_ = c.blockage_loss.value_or(drawn_loss);
}

std::int64_t Simulation::frame_slot(const Player &p, std::int64_t frame) const
{
    return static_cast<std::int64_t>(std::ceil(p.phase + static_cast<double>(frame) * period_slots_ - 1e-9));
}

void Simulation::draw_waypoint(Player &p)
{
    const auto &c = cfg();
    const double mx = std::min(c.body_radius, scenario_.pod_width / 4.0);
    const double my = std::min(c.body_radius, scenario_.pod_depth / 4.0);
    const double hw = scenario_.pod_width / 2.0 - mx;
    const double hd = scenario_.pod_depth / 2.0 - my;
    p.waypoint = {p.pod_center.x + uniform_in(p.rng, -hw, hw), p.pod_center.y + uniform_in(p.rng, -hd, hd),
                  p.pod_center.z};
    p.speed = c.max_speed * uniform_in(p.rng, 0.5, 1.0);
}

Pose Simulation::next_pose(Player &p, const Pose &from)
{
    const auto &c = cfg();
    Pose to = from;
    const double step = p.speed * c.slot_duration;
    const double gap = distance_2d(from.position, p.waypoint);
    if (gap <= step)
    {
        to.position = p.waypoint;
        draw_waypoint(p);
    }
    else
    {
        to.position.x += (p.waypoint.x - from.position.x) * step / gap;
        to.position.y += (p.waypoint.y - from.position.y) * step / gap;
    }
    to.head_azimuth = normalize_angle(from.head_azimuth + gaussian(p.rng) * c.head_sigma * M_PI / 180.0);
    return to;
}

bool Simulation::has_pending() const
{
    return std::any_of(players_.begin(), players_.end(), [](const Player &p) { return p.pending.has_value(); });
}

void Simulation::emit(std::vector<DeliveryRecord> &out, const DeliveryRecord &r)
{
    if (r.arrival_slot < warmup_slots_)
        return;
    ++(r.hd ? stats_.hd : stats_.fallbacks);
    out.push_back(r);
}

void Simulation::serve(int u, int invalidations)
{
    PendingFrame &f = *players_[u].pending;
    const double now = clock();
    const auto outcome = compute::serve_frame(f.request, cache_, pool_, now);
    if (outcome.source == compute::FrameSource::CacheHit)
    {
        f.ready_time = now;
        f.task_id = 0;
        if (f.arrival_slot >= warmup_slots_)
            ++stats_.cache_hits;
    }
    else
    {
        f.task_id = outcome.task_id;
        waiting_[outcome.task_id] = u;
    }
    if (trace_.compute)
        *trace_.compute << slot_ << ',' << "realtime" << ',' << u << ',' << outcome.d_comp << ','
                        << (outcome.source == compute::FrameSource::CacheHit ? 1 : 0) << ',' << invalidations << '\n';
}

void Simulation::rerender(int u, int invalidations)
{
    PendingFrame &f = *players_[u].pending;
    if (f.task_id != 0)
    {
        pool_.cancel_queued(f.task_id);
        waiting_.erase(f.task_id);
    }
    f.request.id = next_task_id_++;
    f.request.key.context = contexts_[u];
    f.ready_time.reset();
    f.task_id = 0;
    f.remaining_bits = f.request.hd_size;
    if (f.arrival_slot >= warmup_slots_)
        ++stats_.rerenders;
    serve(u, invalidations);
}

std::vector<DeliveryRecord> Simulation::step()
{
    const auto &c = cfg();
    const double now = clock();
    const double slot_end = static_cast<double>(slot_ + 1) * c.slot_duration;
    const int n = n_players();
    std::vector<DeliveryRecord> out;

    // Frames whose request time has passed can never be hit.
    cache_.erase_if([&](const compute::CacheEntry &e) { return e.request_time < now - compute::deadline_tolerance; });

    // Impulse actions.
    int invalidations = 0;
    for (const auto &ev : sample_arrivals(c.action_intensity, c.slot_duration, catalog_, n, workload_))
    {
        popularity_ = update_popularity(std::move(popularity_), ev.action);
        ++stats_.actions;
        const auto inv = compute::invalidate_on_action(ev.action, catalog_, contexts_, cache_, pool_);
        invalidations += inv.total();
        stats_.invalidations += inv.total();
        for (int u : catalog_.affected(ev.action))
            if (players_[u].pending && !players_[u].pending->delivered)
                rerender(u, invalidations);
    }

    // Frame requests at the display cadence; a frame still in flight
    // suppresses the next one.
    for (int u = 0; u < n; ++u)
    {
        Player &p = players_[u];
        while (frame_slot(p, p.next_frame) <= slot_)
        {
            const std::int64_t f = p.next_frame++;
            if (!generating_ || p.pending)
                continue;
            const Pose &pose = p.lookahead.front();
            PendingFrame pf;
            pf.request.id = next_task_id_++;
            pf.request.key = {u, f, compute::quantize_pose(pose.position, pose.head_azimuth), contexts_[u]};
            pf.request.cls = compute::TaskClass::RealTime;
            pf.request.compute_demand = scenario_.compute_demand;
            pf.request.hd_size = scenario_.hd_size;
            pf.request.created = now;
            pf.request.deadline = now + c.latency.d_th;
            pf.arrival_slot = slot_;
            pf.remaining_bits = scenario_.hd_size;
            p.pending = std::move(pf);
            if (slot_ >= warmup_slots_)
                ++stats_.requests;
            serve(u, invalidations);
        }
    }

    // Proactive rendering of predicted frames.
    if (c.scheme != Scheme::Baseline1 && generating_ && c.cache_capacity > 0)
    {
        std::vector<compute::PredictedFrame> frames;
        for (int u = 0; u < n; ++u)
        {
            const Player &p = players_[u];
            for (std::int64_t f = p.next_frame;; ++f)
            {
                const std::int64_t s = frame_slot(p, f);
                const std::int64_t ahead = s - slot_;
                if (ahead > c.prediction_window)
                    break;
                const Pose &pose = p.lookahead[static_cast<std::size_t>(ahead)];
                frames.push_back({u, f, static_cast<double>(s) * c.slot_duration,
                                  compute::quantize_pose(pose.position, pose.head_azimuth)});
            }
        }
        compute::PlanInputs in;
        in.frames = frames;
        in.contexts = contexts_;
        in.catalog = &catalog_;
        in.popularity = &popularity_;
        in.top_k = c.top_k;
        in.reserved_servers = c.reserved_servers;
        in.slot = slot_;
        in.now = now;
        in.slot_end = slot_end;
        in.compute_demand = scenario_.compute_demand;
        in.hd_size = scenario_.hd_size;
        auto plan = compute::proactive_plan(in, cache_, pool_, next_task_id_);
        stats_.proactive_tasks += static_cast<std::int64_t>(plan.tasks.size());
        compute::enqueue_tasks(pool_, std::move(plan.tasks));
    }

    transmit(now);
    finish_compute(now, slot_end);
    resolve(slot_end, out);

    for (auto &p : players_)
    {
        p.lookahead.pop_front();
        p.lookahead.push_back(next_pose(p, p.lookahead.back()));
    }
    ++slot_;
    return out;
}

void Simulation::transmit(double now)
{
    const auto &c = cfg();
    const int n = n_players();
    const int n_aps = static_cast<int>(aps_.size());
    const double main = c.antenna.mainlobe_gain;

    std::vector<int> ready;
    for (int u = 0; u < n; ++u)
    {
        const auto &f = players_[u].pending;
        if (f && !f->delivered && f->ready_time && *f->ready_time <= now + compute::deadline_tolerance)
            ready.push_back(u);
    }

    // Boresight link budgets of the players with a frame to send.
    std::vector<Vec3> pos(n);
    for (int u = 0; u < n; ++u)
        pos[u] = players_[u].lookahead.front().position;
    std::vector<std::vector<channel::LinkGeometry>> geo(n, std::vector<channel::LinkGeometry>(n_aps));
    std::vector<std::vector<char>> blocked(n, std::vector<char>(n_aps, 0));
    std::vector<std::vector<double>> aligned_mw(n, std::vector<double>(n_aps));
    std::vector<std::vector<double>> snr_rate(n, std::vector<double>(n_aps));
    std::vector<double> sample(n, 0.0); // served rate this slot
    for (int u : ready)
    {
        for (int a = 0; a < n_aps; ++a)
        {
            auto &g = geo[u][a];
            g = channel::make_geometry(aps_[a], pos[u], players_[u].lookahead.front().head_azimuth);
            if (g.distance < channel::reference_distance)
                ++stats_.clamped_distances;
            bool b = channel::self_blocked(g.azimuth_player_to_ap, g.head_azimuth, c.self_block_cone);
            for (int v = 0; v < n && !b; ++v)
                b = v != u && channel::body_blocks(aps_[a], pos[u], pos[v], c.body_radius);
            blocked[u][a] = b;
            const double rx =
                c.tx_power + 2.0 * main - channel::path_loss_db(g.distance, c.carrier_freq, b, blockage_loss_);
            aligned_mw[u][a] = channel::dbm_to_mw(rx);
            snr_rate[u][a] = channel::achievable_rate(rx - noise_dbm_, c.bandwidth);
        }
    }

    const int m = static_cast<int>(ready.size());
    std::vector<radio::MatchRequest> requests(m);
    std::vector<std::vector<double>> ready_rates(m), ready_power(m);
    std::vector<double> avg(m);
    for (int k = 0; k < m; ++k)
    {
        const int u = ready[k];
        requests[k] = {u, players_[u].pending->request.deadline - now};
        ready_rates[k] = snr_rate[u];
        ready_power[k] = aligned_mw[u];
        avg[k] = players_[u].avg_rate;
    }

    radio::MatchingResult matching;
    if (m > 0)
    {
        matching = radio::deferred_acceptance(radio::build_preferences(requests, ready_rates, 1));
        if (c.scheme == Scheme::Proposed)
        {
            const std::vector<int> quota(n_aps, 1);
            matching = radio::mc_augment(std::move(matching), avg, scenario_.mc_rate_threshold, ready_power, quota);
            stats_.mc_grants += matching.mc_granted;
            stats_.mc_starved += matching.mc_starved;
        }
    }

    std::vector<int> served_by(n_aps, -1); // AP -> player
    for (int k = 0; k < m; ++k)
        for (int a : matching.serving[k])
            served_by[a] = ready[k];

    const double noise_mw = channel::dbm_to_mw(noise_dbm_);
    for (int k = 0; k < m; ++k)
    {
        const int u = ready[k];
        PendingFrame &f = *players_[u].pending;
        const auto &serving = matching.serving[k];
        double sinr = -std::numeric_limits<double>::infinity();
        double rate = 0.0;
        if (!serving.empty())
        {
            double signal = 0.0;
            for (int a : serving)
                signal += aligned_mw[u][a];
            double interference = 0.0;
            for (int b = 0; b < n_aps; ++b)
            {
                const int v = served_by[b];
                if (v < 0 || v == u)
                    continue;
                const auto &gb = geo[u][b];
                const double tx_gain =
                    channel::antenna_gain_db(gb.azimuth_ap_to_player - geo[v][b].azimuth_ap_to_player, c.antenna);
                double rx_gain = c.antenna.sidelobe_gain;
                for (int a : serving)
                    rx_gain = std::max(rx_gain, channel::antenna_gain_db(
                                                    gb.azimuth_player_to_ap - geo[u][a].azimuth_player_to_ap, c.antenna));
                const double pl = channel::path_loss_db(gb.distance, c.carrier_freq, blocked[u][b], blockage_loss_);
                interference += channel::dbm_to_mw(c.tx_power + tx_gain + rx_gain - pl);
            }
            sinr = channel::sinr_db_mw(signal, interference, noise_mw);
            rate = channel::achievable_rate(sinr, c.bandwidth);
            sample[u] = rate;
        }

        if (rate > 0.0)
        {
            const double sent = rate * c.slot_duration;
            if (sent >= f.remaining_bits)
            {
                f.delivered = true;
                f.serving_set_size = static_cast<int>(serving.size());
                f.delivery_time = now + c.slot_duration;
                f.remaining_bits = 0.0;
            }
            else
                f.remaining_bits -= sent;
        }

        if (trace_.matching)
        {
            std::string aps;
            for (std::size_t i = 0; i < serving.size(); ++i)
                aps += (i ? "|" : "") + std::to_string(serving[i]);
            *trace_.matching << slot_ << ',' << u << ',' << aps << ',' << requests[k].slack * 1e3 << ',' << rate
                             << '\n';
        }
        if (trace_.links)
            for (int a = 0; a < n_aps; ++a)
            {
                const bool serves = std::find(serving.begin(), serving.end(), a) != serving.end();
                const double link_sinr = serves ? sinr : channel::mw_to_dbm(aligned_mw[u][a]) - noise_dbm_;
                *trace_.links << slot_ << ',' << u << ',' << a << ',' << int(blocked[u][a]) << ',' << link_sinr
                              << ',' << (serves ? rate : snr_rate[u][a]) << '\n';
            }
    }

    // Smoothed throughput: the served rate, 0 in slots without service.
    for (int u = 0; u < n; ++u)
        players_[u].avg_rate = (1.0 - c.avg_rate_smoothing) * players_[u].avg_rate + c.avg_rate_smoothing * sample[u];
}

void Simulation::finish_compute(double now, double until)
{
    for (auto &done : pool_.advance(now, until))
    {
        const compute::FrameTask &t = done.task;
        const int u = t.key.player;
        if (trace_.compute)
            *trace_.compute << slot_ << ',' << class_name(t.cls) << ',' << u << ',' << done.finish - t.created << ','
                            << 0 << ',' << 0 << '\n';
        if (auto it = waiting_.find(t.id); it != waiting_.end())
        {
            PendingFrame &f = *players_[it->second].pending;
            f.ready_time = done.finish;
            f.task_id = 0;
            waiting_.erase(it);
            continue;
        }
        if (t.cls != compute::TaskClass::Proactive)
            continue;
        // Keep a speculative frame only if its request is still ahead and its
        // game state is still reachable.
        const Player &p = players_[u];
        const compute::ActionContext cur = contexts_[u];
        const bool ahead = t.key.frame_index >= p.next_frame && t.deadline > until - compute::deadline_tolerance;
        const bool current = t.key.context == cur ||
                             (t.key.context.generation == cur.generation + 1 && t.key.context.last_action >= 0 &&
                              catalog_.affects(u, t.key.context.last_action));
        if (ahead && current)
            cache_.insert({t.key, slot_, t.deadline});
    }
}

void Simulation::resolve(double slot_end, std::vector<DeliveryRecord> &out)
{
    const auto &c = cfg();
    for (auto &p : players_)
    {
        if (!p.pending)
            continue;
        PendingFrame &f = *p.pending;
        if (f.delivered)
        {
            const double delivery = f.delivery_time;
            if (!compute::misses_deadline(f.request, delivery))
                emit(out, compute::hd_record(f.request, *f.ready_time, delivery, f.serving_set_size, f.arrival_slot));
            else
                emit(out, compute::local_fallback(f.request, f.ready_time, delivery, c.latency.d_th, f.arrival_slot));
            p.pending.reset();
        }
        else if (slot_end >= f.request.deadline - compute::deadline_tolerance)
        {
            if (f.task_id != 0)
            {
                pool_.cancel_queued(f.task_id);
                waiting_.erase(f.task_id);
            }
            emit(out, compute::local_fallback(f.request, f.ready_time, slot_end, c.latency.d_th, f.arrival_slot));
            p.pending.reset();
        }
    }
}

ReplicationResult run_replication(const ValidatedScenario &scenario, int replication, TraceSinks trace)
{
    const auto &c = scenario.config;
    Simulation sim(scenario, replication, trace);
    const auto total_slots = static_cast<std::int64_t>(std::llround(c.sim_duration / c.slot_duration));
    ReplicationResult r;
    r.n_players = c.n_players;
    auto append = [&](std::vector<DeliveryRecord> recs) {
        r.records.insert(r.records.end(), recs.begin(), recs.end());
    };
    while (sim.slot() < total_slots)
        append(sim.step());
    sim.stop_requests();
    const auto drain_limit = total_slots + static_cast<std::int64_t>(std::ceil(c.latency.d_th / c.slot_duration)) + 2;
    while (sim.has_pending())
    {
        if (sim.slot() > drain_limit)
            throw std::runtime_error("run_replication: frames still pending past their deadline");
        append(sim.step());
    }
    r.stats = sim.stats();
    r.observed_seconds = static_cast<double>(total_slots - sim.warmup_slots()) * c.slot_duration;
    return r;
}

} // namespace vrarcade::engine
