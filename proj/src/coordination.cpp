#include "swarmorbit/coordination.hpp"

#include <algorithm>
#include <string>

namespace swarmorbit {

const char* to_string(OvertakeStage stage) {
    switch (stage) {
        case OvertakeStage::non_overtaking: return "non_overtaking";
        case OvertakeStage::stage1: return "stage1";
        case OvertakeStage::stage2: return "stage2";
    }
    return "?";
}

bool in_overtake_set(const RobotState& robot_i, const PairView& membership_view) {
    return orientation_sign(robot_i.direction) * membership_view.Lg_h_i > 0.0;
}

namespace {

bool in_range(const RobotState& a, const RobotState& b, double range) {
    const Vec2 d = b.p - a.p;
    return dot(d, d) <= range * range;
}

double neighbor_input(const RobotState& other, const ImplicitPath& path, const FieldGains& gains,
                      const SafetyConfig& cfg) {
    if (cfg.neighbor_input == SafetyConfig::NeighborInput::applied) return other.omega;
    try {
        return std::clamp(heading_ref(path, gains, other), -cfg.omega_max, cfg.omega_max);
    } catch (const DomainError&) {
        return other.omega;
    }
}

PairView membership_view(const RobotState& robot_i, const RobotState& other,
                         const SafetyConfig& cfg, const PairView& view, bool opposing) {
    if (!(opposing && cfg.opposing_as_static)) return view;
    return build_pair_view(cfg, robot_i.p, robot_i.velocity(), other.p, Vec2{});
}

}  // namespace

std::vector<int> overtake_set(const RobotState& robot_i, std::span<const RobotState> others,
                              const SafetyConfig& cfg) {
    std::vector<int> ids;
    const double range = cfg.effective_sensing_range();
    for (const RobotState& other : others) {
        if (other.id == robot_i.id || !other.active || !in_range(robot_i, other, range)) continue;
        const PairView view = build_pair_view(cfg, robot_i, other);
        const bool opposing = other.direction != robot_i.direction;
        if (in_overtake_set(robot_i, membership_view(robot_i, other, cfg, view, opposing)))
            ids.push_back(other.id);
    }
    return ids;
}

bool is_overtaking(bool in_set, double psi) { return in_set && psi < 0.0; }

bool is_overtaking(const LedgerEntry& entry) { return is_overtaking(entry.in_set, entry.psi); }

double course_cross(const RobotState& robot_i, const Vec2& v_i, const Vec2& v_j) {
    const double ni = norm(v_i);
    const double nj = norm(v_j);
    if (ni == 0.0 || nj == 0.0) return 0.0;
    return orientation_sign(robot_i.direction) * dot(v_j / nj, rotate_e(v_i / ni));
}

double assumption1_margin(const RobotState& robot_i, const PairView& view) {
    const double ni = norm(view.v_i);
    if (view.dist == 0.0 || ni == 0.0) return 0.0;
    return orientation_sign(robot_i.direction) *
           dot(view.p_ij / view.dist, rotate_e(view.v_i / ni));
}

OvertakeStage stage_transition(OvertakeStage current, bool rule_active, double cross) {
    if (!rule_active) return OvertakeStage::non_overtaking;
    switch (current) {
        case OvertakeStage::non_overtaking: return OvertakeStage::stage1;
        case OvertakeStage::stage1: return cross < 0.0 ? OvertakeStage::stage2 : OvertakeStage::stage1;
        case OvertakeStage::stage2: return OvertakeStage::stage2;
    }
    return current;
}

OvertakeStage stage_transition(const LedgerEntry& entry, const RobotState& robot_i,
                               const PairView& view) {
    return stage_transition(entry.stage, is_overtaking(entry),
                            course_cross(robot_i, view.v_i, view.v_j));
}

double aggregate_safe(std::span<const double> corrections) {
    double best = 0.0;
    for (double c : corrections) best = std::max(best, c);
    return best;
}

RobotDecision robot_input(const RobotState& robot_i, std::span<const RobotState> neighbors,
                          const ImplicitPath& path, const FieldGains& gains,
                          const SafetyConfig& cfg) {
    RobotDecision out;
    try {
        out.u_ref = heading_ref(path, gains, robot_i);
    } catch (const DegenerateFieldError& err) {
        throw DegenerateFieldError("robot " + std::to_string(robot_i.id) + ": " + err.what());
    } catch (const DegenerateGradientError& err) {
        throw DegenerateGradientError("robot " + std::to_string(robot_i.id) + ": " + err.what());
    }

    const double sign = orientation_sign(robot_i.direction);
    const double range = cfg.effective_sensing_range();
    std::vector<double> corrections;
    for (const RobotState& other : neighbors) {
        if (other.id == robot_i.id || !other.active || !in_range(robot_i, other, range)) continue;

        PairDecision pd;
        pd.j = other.id;
        pd.view = build_pair_view(cfg, robot_i, other);
        pd.opposing = other.direction != robot_i.direction;
        pd.lg_h_i = pd.view.Lg_h_i;
        const double u_j = neighbor_input(other, path, gains, cfg);
        pd.psi = psi(pd.view, cfg, out.u_ref, u_j);
        pd.in_set = in_overtake_set(robot_i, membership_view(robot_i, other, cfg, pd.view, pd.opposing));
        pd.overtaking = is_overtaking(pd.in_set, pd.psi);
        pd.assumption1 = assumption1_margin(robot_i, pd.view);
        pd.course_cross = course_cross(robot_i, pd.view.v_i, pd.view.v_j);
        if (pd.view.inside_virtual_zone) ++out.inside_virtual_zone;

        if (pd.overtaking) {
            try {
                pd.correction = sign * u_safe_pair(pd.view, cfg, out.u_ref, u_j);
            } catch (const SingularityError&) {
                pd.singular = true;
                pd.correction = cfg.omega_max;
                ++out.singularities;
            }
            corrections.push_back(pd.correction);
        }
        out.pairs.push_back(pd);
    }

    out.u_safe = sign * aggregate_safe(corrections);
    const double raw = out.u_ref + out.u_safe;
    out.saturated = std::abs(raw) > cfg.omega_max;
    out.omega = std::clamp(raw, -cfg.omega_max, cfg.omega_max);
    return out;
}

}  // namespace swarmorbit
