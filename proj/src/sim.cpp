#include "swarmorbit/sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace swarmorbit {

RobotState step_unicycle(const RobotState& state, double omega, double dt) {
    // The position derivative depends on theta only and theta is linear in
    // time under a zero-order hold, so k2 == k3 for the position components.
    const double th0 = state.theta;
    const double th_mid = th0 + 0.5 * dt * omega;
    const double th1 = th0 + dt * omega;
    const Vec2 k1 = state.s * unit_heading(th0);
    const Vec2 k2 = state.s * unit_heading(th_mid);
    const Vec2 k3 = k2;
    const Vec2 k4 = state.s * unit_heading(th1);

    RobotState next = state;
    next.p = state.p + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    next.theta = wrap_angle(th1);
    next.omega = omega;
    return next;
}

double speed_sample(const SpeedSpec& spec, std::mt19937_64& rng) {
    if (spec.lo > spec.hi) throw ValidationError("speed_sample: lo must be <= hi");
    const std::uint64_t bits = rng() >> 11;
    const double u = static_cast<double>(bits) * 0x1.0p-53;
    if (spec.lo == spec.hi) return spec.lo;
    return spec.lo + (spec.hi - spec.lo) * u;
}

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

double initial_omega(const Scenario& sc, const RobotState& s) {
    try {
        return heading_ref(sc.path, sc.gains, s);
    } catch (const DomainError&) {
        return 0.0;
    }
}

double field_heading(const Scenario& sc, const Vec2& p, Orientation dir) {
    const Vec2 f = gvf(sc.path, sc.gains, p, dir);
    if (norm(f) < 1e-9) throw DegenerateFieldError("spawn point has a vanishing guiding field");
    return std::atan2(f.y, f.x);
}

Vec2 carrier_position(const LaunchSpec& launch, double t) {
    return launch.origin + Vec2{0.0, launch.carrier_speed * t};
}

struct PairTrack {
    LedgerEntry entry;
    bool prev_psi_negative = false;
    bool has_onset = false;
    double onset_e_gap = 0.0;
    double onset_alignment = 0.0;
    int episode = -1;
    bool seen = false;
};

class Engine {
public:
    Engine(const Scenario& sc, std::uint64_t seed, const StepObserver& observer)
        : sc_(sc), observer_(observer), states_(spawn_robots(sc, seed)) {
        ignore_.resize(states_.size());
        int id = 0;
        for (const RobotGroup& g : sc.robots)
            for (int k = 0; k < g.count; ++k) ignore_[id++] = g.ignore_swarms;
        for (const RobotState& s : states_)
            if (!s.active) launch_queue_.push_back(s.id);
        if (sc.launch && !launch_queue_.empty()) activate_next(0.0);
    }

    SimulationLog run() {
        const double dt = sc_.dt;
        const auto steps = static_cast<std::int64_t>(std::llround(sc_.duration / dt));
        window_ = StepRecord{};
        scan_distances(0.0);

        for (std::int64_t k = 0; k < steps; ++k) {
            const double t = static_cast<double>(k) * dt;
            const double t_next = static_cast<double>(k + 1) * dt;
            step(t, t_next);
            ++log_.steps;
            const bool halt = sc_.halt_on_collision && window_.collision_count > 0;
            if ((k + 1) % sc_.record_every == 0 || k + 1 == steps || halt) emit_record(t_next);
            if (halt) {
                log_.halted = true;
                break;
            }
        }
        for (auto& [key, track] : ledger_)
            if (track.episode >= 0) close_episode(track, static_cast<double>(log_.steps) * dt, false, 0.0, 0.0, true);
        log_.final_states = states_;
        return std::move(log_);
    }

private:
    void step(double t, double t_next) {
        const std::vector<RobotState> snapshot = states_;
        std::vector<RobotDecision> decisions(snapshot.size());
        std::vector<RobotState> neighbors;
        for (const RobotState& me : snapshot) {
            if (!me.active) continue;
            neighbors.clear();
            for (const RobotState& other : snapshot) {
                if (other.id == me.id || !other.active) continue;
                const auto& ign = ignore_[me.id];
                if (std::find(ign.begin(), ign.end(), other.swarm) != ign.end()) continue;
                neighbors.push_back(other);
            }
            decisions[me.id] = robot_input(me, neighbors, sc_.path, sc_.gains, sc_.safety);
        }

        if (observer_) observer_(t, snapshot, decisions);

        // commit in id order
        for (const RobotState& me : snapshot) {
            if (!me.active) continue;
            const RobotDecision& d = decisions[me.id];
            states_[me.id] = step_unicycle(me, d.omega, sc_.dt);
            window_.max_abs_omega = std::max(window_.max_abs_omega, std::abs(d.omega));
            window_.saturation_count += d.saturated ? 1 : 0;
            window_.singularity_count += d.singularities;
            window_.inside_virtual_zone_count += d.inside_virtual_zone;
            bool pos = false, neg = false;
            for (const PairDecision& pd : d.pairs)
                if (pd.overtaking) (pd.correction > 0.0 ? pos : neg) |= pd.correction != 0.0;
            if (pos && neg) ++window_.conflict_count;
        }
        update_ledger(snapshot, decisions, t);

        if (sc_.launch) {
            const Vec2 carrier = carrier_position(*sc_.launch, t_next);
            for (RobotState& s : states_)
                if (!s.active) s.p = carrier;
            if (next_launch_ < launch_queue_.size() && last_launched_ >= 0) {
                const double gap = norm(states_[last_launched_].p - carrier);
                if (gap >= sc_.launch->spacing_multiple * sc_.safety.r) activate_next(t_next);
            }
        }
        scan_distances(t_next);
    }

    void activate_next(double t) {
        RobotState& s = states_[launch_queue_[next_launch_++]];
        s.active = true;
        s.p = carrier_position(*sc_.launch, t);
        s.theta = kHalfPi;
        s.omega = initial_omega(sc_, s);
        last_launched_ = s.id;
        log_.launch_times.push_back(t);
    }

    void scan_distances(double t) {
        const double r = sc_.safety.r;
        for (std::size_t a = 0; a < states_.size(); ++a) {
            if (!states_[a].active) continue;
            for (std::size_t b = a + 1; b < states_.size(); ++b) {
                if (!states_[b].active) continue;
                const double dist = norm(states_[b].p - states_[a].p);
                window_.min_pairwise_distance = std::min(window_.min_pairwise_distance, dist);
                if (dist <= r) {
                    ++window_.collision_count;
                    if (std::isnan(log_.first_collision_time)) log_.first_collision_time = t;
                }
            }
        }
    }

    double tangent_misalignment(const RobotState& s, Orientation dir) const {
        try {
            const Vec2 tau = normalize(path_tangent(sc_.path, s.p, dir));
            return norm(unit_heading(s.theta) - tau);
        } catch (const DomainError&) {
            return 2.0;
        }
    }

    void close_episode(PairTrack& track, double t, bool include_closing, double lg, double psi_val,
                       bool run_ended = false) {
        OvertakeEpisode& ep = log_.episodes[track.episode];
        if (include_closing && psi_val < 0.0 && lg < ep.min_lg_h_i) {
            ep.min_lg_h_i = lg;
            ep.t_min_lg_h_i = t;
        }
        ep.t_end = t;
        ep.closed = !run_ended;
        ep.lemma_violated = !(ep.min_lg_h_i > 0.0);
        if (!run_ended) ep.timeline.push_back({t, OvertakeStage::non_overtaking});
        track.episode = -1;
    }

    void update_ledger(const std::vector<RobotState>& snap, const std::vector<RobotDecision>& decisions,
                       double t) {
        const double scale = sc_.path.error_scale();
        for (auto& [key, track] : ledger_) track.seen = false;

        for (const RobotState& me : snap) {
            if (!me.active) continue;
            const double sign = orientation_sign(me.direction);
            for (const PairDecision& pd : decisions[me.id].pairs) {
                PairTrack& track = ledger_[{me.id, pd.j}];
                track.seen = true;
                const RobotState& other = snap[pd.j];
                const double lg = sign * pd.lg_h_i;
                const bool psi_neg = pd.psi < 0.0;
                if (psi_neg && !track.prev_psi_negative) {
                    track.has_onset = true;
                    track.onset_e_gap =
                        std::abs(sc_.path.value(other.p) - sc_.path.value(me.p)) / scale;
                    track.onset_alignment = tangent_misalignment(me, me.direction) +
                                            tangent_misalignment(other, me.direction);
                }
                track.prev_psi_negative = psi_neg;

                const OvertakeStage prev = track.entry.stage;
                track.entry.psi = pd.psi;
                track.entry.lg_h_i = pd.lg_h_i;
                track.entry.in_set = pd.in_set;
                track.entry.assumption1_ok = pd.assumption1 > 0.0;
                const OvertakeStage next = stage_transition(prev, pd.overtaking, pd.course_cross);
                if (prev == OvertakeStage::stage2 && next == OvertakeStage::stage1)
                    ++log_.forbidden_transitions;
                track.entry.stage = next;

                if (prev == OvertakeStage::non_overtaking && next != OvertakeStage::non_overtaking) {
                    OvertakeEpisode ep;
                    ep.i = me.id;
                    ep.j = pd.j;
                    ep.t_start = t;
                    ep.opposing = pd.opposing;
                    ep.faster_or_equal = me.s >= other.s;
                    ep.e_gap = track.has_onset ? track.onset_e_gap : 0.0;
                    ep.alignment = track.has_onset ? track.onset_alignment : 0.0;
                    ep.preconditions_met = track.has_onset && !pd.opposing && ep.faster_or_equal &&
                                           ep.e_gap < sc_.monitor.eps_pre &&
                                           ep.alignment < sc_.monitor.delta_pre;
                    track.episode = static_cast<int>(log_.episodes.size());
                    log_.episodes.push_back(std::move(ep));
                }
                if (track.episode >= 0) {
                    OvertakeEpisode& ep = log_.episodes[track.episode];
                    if (next == OvertakeStage::non_overtaking) {
                        close_episode(track, t, true, lg, pd.psi);
                    } else {
                        if (ep.timeline.empty() || ep.timeline.back().stage != next)
                            ep.timeline.push_back({t, next});
                        if (lg < ep.min_lg_h_i) {
                            ep.min_lg_h_i = lg;
                            ep.t_min_lg_h_i = t;
                        }
                        if (pd.assumption1 <= 0.0) ep.assumption1_held = false;
                        window_.min_active_lg_h_i = std::min(window_.min_active_lg_h_i, lg);
                    }
                }
            }
        }

        for (auto it = ledger_.begin(); it != ledger_.end();) {
            if (it->second.seen) {
                ++it;
                continue;
            }
            if (it->second.episode >= 0) close_episode(it->second, t, false, 0.0, 0.0);
            it = ledger_.erase(it);
        }
        last_decisions_ = decisions;
    }

    void emit_record(double t) {
        StepRecord rec = window_;
        rec.t = t;
        for (const RobotState& s : states_) {
            if (!s.active) continue;
            ++rec.active_count;
            rec.robots.push_back({s.id, s.p, s.theta, s.omega, sc_.path.value(s.p)});
        }
        for (const auto& [key, track] : ledger_) {
            const RobotDecision& d = last_decisions_[key.first];
            for (const PairDecision& pd : d.pairs) {
                if (pd.j != key.second) continue;
                rec.pairs.push_back(
                    {key.first, key.second, pd.view.dist, pd.view.h, pd.psi, pd.lg_h_i, track.entry.stage});
                break;
            }
        }
        log_.records.push_back(std::move(rec));
        window_ = StepRecord{};
    }

    const Scenario& sc_;
    const StepObserver& observer_;
    std::vector<RobotState> states_;
    std::vector<std::vector<int>> ignore_;
    std::vector<int> launch_queue_;
    std::size_t next_launch_ = 0;
    int last_launched_ = -1;
    std::map<std::pair<int, int>, PairTrack> ledger_;
    std::vector<RobotDecision> last_decisions_;
    StepRecord window_;
    SimulationLog log_;
};

}  // namespace

std::vector<RobotState> spawn_robots(const Scenario& sc, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<RobotState> out;
    out.reserve(static_cast<std::size_t>(sc.robot_count()));
    int id = 0;
    for (const RobotGroup& g : sc.robots) {
        for (int k = 0; k < g.count; ++k) {
            RobotState s;
            s.id = id++;
            s.s = speed_sample(g.speed, rng);
            s.swarm = g.swarm;
            s.direction = g.direction;
            switch (g.spawn.kind) {
                case SpawnSpec::Kind::launch:
                    s.active = false;
                    s.p = sc.launch ? sc.launch->origin : Vec2{};
                    s.theta = kHalfPi;
                    break;
                case SpawnSpec::Kind::ring: {
                    const double step = g.spawn.arc * 2.0 * std::numbers::pi / g.count;
                    s.p = sc.path.point_at(g.spawn.phase - k * step, g.spawn.level);
                    break;
                }
                case SpawnSpec::Kind::point: s.p = g.spawn.position; break;
            }
            if (s.active) {
                s.theta = wrap_angle(g.spawn.heading ? *g.spawn.heading
                                                     : field_heading(sc, s.p, s.direction));
                s.omega = initial_omega(sc, s);
            }
            out.push_back(s);
        }
    }
    return out;
}

SimulationLog run_scenario(const Scenario& sc, std::uint64_t seed, const StepObserver& observer) {
    sc.validate();
    Engine engine(sc, seed, observer);
    return engine.run();
}

MonitorSummary monitor_report(const SimulationLog& log, const Scenario& sc) {
    if (log.records.empty()) throw std::invalid_argument("monitor_report: empty record stream");
    MonitorSummary out;
    for (const StepRecord& rec : log.records) {
        out.min_pairwise_distance = std::min(out.min_pairwise_distance, rec.min_pairwise_distance);
        out.min_active_lg_h_i = std::min(out.min_active_lg_h_i, rec.min_active_lg_h_i);
        out.max_abs_omega = std::max(out.max_abs_omega, rec.max_abs_omega);
        out.collision_count += rec.collision_count;
        out.saturation_count += rec.saturation_count;
        out.singularity_count += rec.singularity_count;
        out.inside_virtual_zone_count += rec.inside_virtual_zone_count;
        out.conflict_count += rec.conflict_count;
    }
    out.first_collision_time = log.first_collision_time;
    out.forbidden_transitions = log.forbidden_transitions;
    const double scale = sc.path.error_scale();
    for (const RobotState& s : log.final_states)
        if (s.active) out.final_abs_error.emplace_back(s.id, std::abs(sc.path.value(s.p)) / scale);
    out.episodes = log.episodes;
    for (const OvertakeEpisode& ep : log.episodes) {
        const bool nonpositive = !(ep.min_lg_h_i > 0.0);
        if (ep.preconditions_met) {
            ++out.lemma_episodes;
            out.lemma_violations += nonpositive ? 1 : 0;
        } else {
            ++out.unqualified_episodes;
            out.unqualified_nonpositive += nonpositive ? 1 : 0;
        }
    }
    return out;
}

}  // namespace swarmorbit
