#include "swarmorbit/safety_cbf.hpp"

#include <string>
#include <vector>

namespace swarmorbit {

namespace {
constexpr double kVelocityEps = 1e-9;
}

void SafetyConfig::validate() const {
    std::vector<std::string> bad;
    if (!(r > 0.0) || !std::isfinite(r)) bad.emplace_back("safety.r must be > 0");
    if (!(d_exp >= 0.0 && d_exp < 1.0)) bad.emplace_back("safety.d must be in [0,1)");
    if (!(kappa.gamma > 0.0) || !std::isfinite(kappa.gamma)) bad.emplace_back("safety.gamma must be > 0");
    if (!(omega_max > 0.0) || !std::isfinite(omega_max)) bad.emplace_back("safety.omega_max must be > 0");
    if (!(clearance >= 0.0) || !std::isfinite(clearance)) bad.emplace_back("safety.clearance must be >= 0");
    if (!std::isfinite(sensing_range)) bad.emplace_back("safety.sensing_range must be finite");
    if (bad.empty()) return;
    std::string msg = bad.front();
    for (std::size_t k = 1; k < bad.size(); ++k) msg += "; " + bad[k];
    throw ValidationError(msg);
}

double virtual_radius(const SafetyConfig& cfg, double dist) {
    if (!(dist > 0.0)) throw DomainError("virtual_radius: distance must be > 0");
    return std::pow(dist, cfg.d_exp) * std::pow(cfg.barrier_radius(), 1.0 - cfg.d_exp);
}

double virtual_radius_slope(const SafetyConfig& cfg, double dist) {
    if (!(dist > 0.0)) throw DomainError("virtual_radius_slope: distance must be > 0");
    if (cfg.d_exp == 0.0) return 0.0;
    return cfg.d_exp * std::pow(dist / cfg.barrier_radius(), cfg.d_exp - 1.0);
}

PairView build_pair_view(const SafetyConfig& cfg, const Vec2& p_i, const Vec2& v_i, const Vec2& p_j,
                         const Vec2& v_j) {
    PairView view;
    view.p_ij = p_j - p_i;
    view.v_ij = v_j - v_i;
    view.v_i = v_i;
    view.v_j = v_j;
    view.dist = norm(view.p_ij);
    if (!(view.dist > 0.0)) {
        // coincident robots: nothing is defined, report as inside the zone
        view.inside_virtual_zone = true;
        view.rho = cfg.barrier_radius();
        return view;
    }
    view.rho = virtual_radius(cfg, view.dist);

    const double speed_ij = norm(view.v_ij);
    const Vec2 p_hat = view.p_ij / view.dist;
    view.degenerate_velocity = speed_ij < kVelocityEps;
    const Vec2 v_hat = view.degenerate_velocity ? Vec2{} : view.v_ij / speed_ij;

    // sqrt(|p|^2 - rho^2) = |p| cos(phi)
    double leg = 0.0;
    if (view.dist > view.rho) {
        leg = std::sqrt((view.dist - view.rho) * (view.dist + view.rho));
        view.cos_phi = leg / view.dist;
    } else {
        view.inside_virtual_zone = true;
        view.cos_phi = 0.0;
    }

    const double pv = dot(view.p_ij, view.v_ij);
    view.h = pv + speed_ij * leg;

    // rho * rho_dot, with rho_dot = rho'(|p|) * p_hat^T v_ij
    const double rho_rho_dot =
        view.rho * virtual_radius_slope(cfg, view.dist) * dot(p_hat, view.v_ij);
    view.Lf_h = dot(view.v_ij, view.v_ij);
    if (leg > 0.0) view.Lf_h += speed_ij * (pv - rho_rho_dot) / leg;

    const Vec2 lever = view.dist * (p_hat + view.cos_phi * v_hat);
    view.Lg_h_j = dot(lever, -rotate_e(v_j));
    view.Lg_h_i = dot(lever, rotate_e(v_i));
    return view;
}

PairView build_pair_view(const SafetyConfig& cfg, const RobotState& state_i,
                         const RobotState& state_j) {
    return build_pair_view(cfg, state_i.p, state_i.velocity(), state_j.p, state_j.velocity());
}

double h_dot(const PairView& view, double u_i, double u_j) {
    return view.Lf_h + view.Lg_h_i * u_i + view.Lg_h_j * u_j;
}

double psi(const PairView& view, const SafetyConfig& cfg, double u_ref_i, double u_j) {
    return h_dot(view, u_ref_i, u_j) + cfg.kappa(view.h);
}

double u_safe_pair(const PairView& view, const SafetyConfig& cfg, double u_ref_i, double u_j) {
    const double residual = psi(view, cfg, u_ref_i, u_j);
    if (residual >= 0.0) return 0.0;
    if (std::abs(view.Lg_h_i) <= kSingularityEps)
        throw SingularityError("u_safe_pair: |Lg_h_i| = " + std::to_string(std::abs(view.Lg_h_i)) +
                               " with Psi = " + std::to_string(residual));
    return -residual / view.Lg_h_i;
}

}  // namespace swarmorbit
