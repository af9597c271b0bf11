#pragma once

#include <span>
#include <vector>

#include "swarmorbit/path_field.hpp"
#include "swarmorbit/robot.hpp"
#include "swarmorbit/safety_cbf.hpp"

namespace swarmorbit {

enum class OvertakeStage { non_overtaking, stage1, stage2 };

const char* to_string(OvertakeStage stage);

// Diagnostic state of one ordered pair (i, j), i being the potential overtaker.
struct LedgerEntry {
    OvertakeStage stage = OvertakeStage::non_overtaking;
    double psi = 0.0;
    double lg_h_i = 0.0;
    bool in_set = false;         // j in N_i this step
    bool assumption1_ok = false; // p_hat_ij^T E v_hat_i > 0 (in i's orbit sense)
};

// j belongs to N_i iff Lg_h_i > 0, measured in i's orbit sense (the sign is
// flipped for counter-clockwise robots so that "positive" is always outward).
bool in_overtake_set(const RobotState& robot_i, const PairView& membership_view);

// Ids of the robots that robot_i may overtake, among those within sensing range.
std::vector<int> overtake_set(const RobotState& robot_i, std::span<const RobotState> others,
                              const SafetyConfig& cfg);

bool is_overtaking(bool in_set, double psi);
bool is_overtaking(const LedgerEntry& entry);

// v_hat_j^T E v_hat_i in i's orbit sense; negative once j's course has turned
// past i's.
double course_cross(const RobotState& robot_i, const Vec2& v_i, const Vec2& v_j);

// p_hat_ij^T E v_hat_i in i's orbit sense.
double assumption1_margin(const RobotState& robot_i, const PairView& view);

// One step of the two-stage overtaking automaton.
OvertakeStage stage_transition(OvertakeStage current, bool rule_active, double course_cross);
OvertakeStage stage_transition(const LedgerEntry& entry, const RobotState& robot_i,
                               const PairView& view);

// max over the per-pair corrections, floored at 0; empty -> 0. Corrections are
// expressed in the robot's orbit sense (outward positive).
double aggregate_safe(std::span<const double> corrections);

struct PairDecision {
    int j = 0;
    PairView view;
    double psi = 0.0;
    double lg_h_i = 0.0;   // raw Lg_h_i of view
    bool opposing = false; // j orbits in the opposite sense
    bool in_set = false;
    bool overtaking = false;
    bool singular = false;
    double correction = 0.0;  // u_safe_ij in i's orbit sense (>= 0 when overtaking)
    double assumption1 = 0.0;
    double course_cross = 0.0;
};

struct RobotDecision {
    double u_ref = 0.0;
    double u_safe = 0.0;  // signed, added to u_ref
    double omega = 0.0;   // clamped to [-omega_max, omega_max]
    bool saturated = false;
    int singularities = 0;
    int inside_virtual_zone = 0;
    std::vector<PairDecision> pairs;
};

// Final input u_i = clamp(u_ref + u_safe) from robot i's own state and the
// states of the neighbours it observes. Neighbours outside the sensing range,
// inactive ones and robot i itself are skipped. Each neighbour's input is
// taken per cfg.neighbor_input and held fixed. Singular pairs contribute the full outward input
// omega_max and are counted.
RobotDecision robot_input(const RobotState& robot_i, std::span<const RobotState> neighbors,
                          const ImplicitPath& path, const FieldGains& gains,
                          const SafetyConfig& cfg);

}  // namespace swarmorbit
