#pragma once

#include "swarmorbit/geometry.hpp"
#include "swarmorbit/robot.hpp"

namespace swarmorbit {

struct SafetyConfig {
    double r = 1.0;      // collision radius
    double d_exp = 0.5;  // virtual-radius exponent, in [0, 1)
    ClassK kappa{1.0, ClassK::Form::cubic};
    double omega_max = 1.0;  // admissible inputs are [-omega_max, omega_max]
    // The virtual radius collapses to r * (1 + clearance) instead of r, so the
    // boundary of the safe set stays strictly outside the collision disk.
    double clearance = 0.0;
    // Robots further away than this are not considered by the overtaking rule.
    // Non-positive means "10 r".
    double sensing_range = 0.0;
    // Treat counter-rotating robots as static (v_j = 0) when testing
    // membership of the overtake set.
    bool opposing_as_static = false;
    // Input assumed for neighbour j in the barrier derivative: the omega j
    // applied on the previous step, or j's own path-following reference.
    enum class NeighborInput { applied, reference };
    NeighborInput neighbor_input = NeighborInput::applied;

    double barrier_radius() const { return r * (1.0 + clearance); }
    double effective_sensing_range() const { return sensing_range > 0.0 ? sensing_range : 10.0 * r; }
    void validate() const;
};

// rho(|p_ij|) = |p_ij|^d / rb^(d - 1) with rb = barrier_radius(); rho(rb) = rb.
double virtual_radius(const SafetyConfig& cfg, double dist);

// d rho / d |p_ij|
double virtual_radius_slope(const SafetyConfig& cfg, double dist);

// Relative state of the ordered pair (i, j) seen from i, together with the
// collision-cone barrier h and its Lie derivatives along the relative
// unicycle dynamics.
struct PairView {
    Vec2 p_ij;  // p_j - p_i
    Vec2 v_ij;  // v_j - v_i
    Vec2 v_i;
    Vec2 v_j;
    double dist = 0.0;
    double rho = 0.0;
    double cos_phi = 0.0;
    double h = 0.0;
    double Lf_h = 0.0;
    double Lg_h_i = 0.0;
    double Lg_h_j = 0.0;
    // |p_ij| <= rho: the cone is undefined, cos_phi is clamped to 0.
    bool inside_virtual_zone = false;
    // |v_ij| ~ 0: cone term and v_hat_ij are taken as zero.
    bool degenerate_velocity = false;

    bool valid() const { return !inside_virtual_zone; }
};

PairView build_pair_view(const SafetyConfig& cfg, const Vec2& p_i, const Vec2& v_i, const Vec2& p_j,
                         const Vec2& v_j);
PairView build_pair_view(const SafetyConfig& cfg, const RobotState& state_i,
                         const RobotState& state_j);

double h_dot(const PairView& view, double u_i, double u_j);

// Psi = h_dot(u_ref_i, u_j) + kappa(h), with robot j's input held fixed.
double psi(const PairView& view, const SafetyConfig& cfg, double u_ref_i, double u_j);

// Minimal correction added to u_ref_i so that h_dot + kappa(h) >= 0 with
// only u_i free: 0 if Psi >= 0, otherwise -Psi / Lg_h_i.
// Throws SingularityError if Psi < 0 and |Lg_h_i| <= 1e-9.
double u_safe_pair(const PairView& view, const SafetyConfig& cfg, double u_ref_i, double u_j);

inline constexpr double kSingularityEps = 1e-9;

}  // namespace swarmorbit
