#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <limits>
#include <random>
#include <vector>

#include "swarmorbit/coordination.hpp"
#include "swarmorbit/scenario.hpp"

namespace swarmorbit {

// Integrates the unicycle kinematics over dt with omega held constant
// (classical RK4). The heading of the result is wrapped to (-pi, pi].
RobotState step_unicycle(const RobotState& state, double omega, double dt);

// Uniform sample in [lo, hi]. Uses only the raw 64-bit engine output so the
// sequence is identical across standard library implementations.
double speed_sample(const SpeedSpec& spec, std::mt19937_64& rng);

struct RobotSample {
    int id = 0;
    Vec2 p;
    double theta = 0.0;
    double omega = 0.0;
    double e = 0.0;
};

struct PairSample {
    int i = 0;
    int j = 0;
    double distance = 0.0;
    double h = 0.0;
    double psi = 0.0;
    double lg_h_i = 0.0;
    OvertakeStage stage = OvertakeStage::non_overtaking;
};

// One telemetry row. Robot and pair samples are instantaneous; the aggregate
// fields summarise every integration step since the previous record, so the
// monitors see each step even when records are decimated.
struct StepRecord {
    double t = 0.0;
    std::vector<RobotSample> robots;  // active robots only
    std::vector<PairSample> pairs;    // tracked pairs (within sensing range or overtaking)
    int active_count = 0;
    double min_pairwise_distance = std::numeric_limits<double>::infinity();
    double max_abs_omega = 0.0;
    // min Lg_h_i (in the overtaker's orbit sense) over pairs currently overtaking
    double min_active_lg_h_i = std::numeric_limits<double>::infinity();
    std::int64_t collision_count = 0;  // pair-steps with distance <= r
    std::int64_t saturation_count = 0;
    std::int64_t singularity_count = 0;
    std::int64_t inside_virtual_zone_count = 0;
    std::int64_t conflict_count = 0;  // robot-steps holding corrections of both signs
};

struct StageChange {
    double t = 0.0;
    OvertakeStage stage = OvertakeStage::non_overtaking;
};

// One activation of the overtaking rule for an ordered pair, from the step it
// fires until it deactivates (or the run ends).
struct OvertakeEpisode {
    int i = 0;
    int j = 0;
    double t_start = 0.0;
    double t_end = 0.0;
    bool closed = false;
    bool opposing = false;
    // Conditions at the step Psi last turned negative before activation.
    double e_gap = 0.0;      // |e_j - e_i| / path.error_scale()
    double alignment = 0.0;  // |v_hat_i - tau_hat(p_i)| + |v_hat_j - tau_hat(p_j)|
    bool faster_or_equal = false;  // s_i >= s_j
    bool preconditions_met = false;
    // min Lg_h_i (orbit sense) while Psi < 0, including a closing step where
    // the rule dropped out with Psi still negative.
    double min_lg_h_i = std::numeric_limits<double>::infinity();
    double t_min_lg_h_i = 0.0;
    bool assumption1_held = true;
    bool lemma_violated = false;
    std::vector<StageChange> timeline;
};

struct SimulationLog {
    std::vector<StepRecord> records;
    std::vector<OvertakeEpisode> episodes;
    std::vector<RobotState> final_states;
    std::vector<double> launch_times;  // activation time per launched robot
    double first_collision_time = std::numeric_limits<double>::quiet_NaN();
    std::int64_t forbidden_transitions = 0;
    std::int64_t steps = 0;
    bool halted = false;
};

// Called once per step with the step-start snapshot and the decision of every
// robot (indexed by id; inactive robots have empty decisions).
using StepObserver =
    std::function<void(double t, std::span<const RobotState>, std::span<const RobotDecision>)>;

// Deterministic fixed-step run: snapshot, per-robot inputs, integration,
// launches, monitors. Identical (scenario, seed) give bit-identical logs.
SimulationLog run_scenario(const Scenario& sc, std::uint64_t seed, const StepObserver& observer = {});

// Initial robot states (inactive launch robots ride the carrier).
std::vector<RobotState> spawn_robots(const Scenario& sc, std::uint64_t seed);

struct MonitorSummary {
    double min_pairwise_distance = std::numeric_limits<double>::infinity();
    double first_collision_time = std::numeric_limits<double>::quiet_NaN();
    double min_active_lg_h_i = std::numeric_limits<double>::infinity();
    double max_abs_omega = 0.0;
    std::int64_t collision_count = 0;
    std::int64_t saturation_count = 0;
    std::int64_t singularity_count = 0;
    std::int64_t inside_virtual_zone_count = 0;
    std::int64_t conflict_count = 0;
    std::int64_t forbidden_transitions = 0;
    std::vector<std::pair<int, double>> final_abs_error;  // (robot id, |e| / error scale)
    std::vector<OvertakeEpisode> episodes;
    int lemma_episodes = 0;           // preconditions met
    int lemma_violations = 0;         // ... and min Lg_h_i <= 0
    int unqualified_episodes = 0;     // preconditions not met
    int unqualified_nonpositive = 0;  // ... with min Lg_h_i <= 0
};

// Throws std::invalid_argument on an empty record stream.
MonitorSummary monitor_report(const SimulationLog& log, const Scenario& sc);

}  // namespace swarmorbit
