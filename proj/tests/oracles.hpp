#pragma once

// Independent reference computations shared by the unit tests and the
// acceptance binary. None of these call the closed forms they check.

#include <cmath>
#include <limits>
#include <random>

#include "swarmorbit/safety_cbf.hpp"

namespace oracle {

using swarmorbit::PairView;
using swarmorbit::SafetyConfig;
using swarmorbit::Vec2;

struct Unicycle {
    Vec2 p;
    double theta = 0.0;
    double s = 1.0;
    double omega = 0.0;
};

// Exact constant-turn-rate motion.
inline Unicycle advance(const Unicycle& u, double t) {
    Unicycle out = u;
    if (std::abs(u.omega) < 1e-14) {
        out.p = u.p + Vec2{std::cos(u.theta), std::sin(u.theta)} * (u.s * t);
    } else {
        const double th = u.theta + u.omega * t;
        const double k = u.s / u.omega;
        out.p = u.p + Vec2{k * (std::sin(th) - std::sin(u.theta)), k * (std::cos(u.theta) - std::cos(th))};
        out.theta = th;
    }
    return out;
}

inline Vec2 velocity(const Unicycle& u) { return Vec2{std::cos(u.theta), std::sin(u.theta)} * u.s; }

// h straight from its definition p^T v + |v| sqrt(|p|^2 - rho^2).
inline double barrier(const SafetyConfig& cfg, const Unicycle& a, const Unicycle& b) {
    const Vec2 p = b.p - a.p;
    const Vec2 v = velocity(b) - velocity(a);
    const double dist = std::hypot(p.x, p.y);
    const double rho = std::pow(dist, cfg.d_exp) * std::pow(cfg.barrier_radius(), 1.0 - cfg.d_exp);
    return p.x * v.x + p.y * v.y + std::hypot(v.x, v.y) * std::sqrt(dist * dist - rho * rho);
}

// Centred difference of h along the exact pair motion.
inline double barrier_rate_fd(const SafetyConfig& cfg, const Unicycle& a, const Unicycle& b,
                              double dt) {
    return (barrier(cfg, advance(a, dt), advance(b, dt)) -
            barrier(cfg, advance(a, -dt), advance(b, -dt))) /
           (2.0 * dt);
}

// argmin (u - u_ref)^2 over an n-point grid on [-w, w] subject to the affine
// barrier condition Lf + Lg_i u + Lg_j u_j + kappa(h) >= 0. NaN if no grid
// point is feasible.
inline double grid_minimizer(const PairView& v, const SafetyConfig& cfg, double u_ref, double u_j,
                             long n) {
    const double w = cfg.omega_max;
    const double step = 2.0 * w / static_cast<double>(n - 1);
    const double base = v.Lf_h + v.Lg_h_j * u_j + cfg.kappa(v.h);
    double best = std::numeric_limits<double>::quiet_NaN();
    double best_cost = std::numeric_limits<double>::infinity();
    for (long k = 0; k < n; ++k) {
        const double u = -w + step * static_cast<double>(k);
        if (base + v.Lg_h_i * u < 0.0) continue;
        const double c = (u - u_ref) * (u - u_ref);
        if (c < best_cost) {
            best_cost = c;
            best = u;
        }
    }
    return best;
}

struct RandomPair {
    Unicycle i;
    Unicycle j;
};

// Random pair outside the virtual zone with a non-degenerate relative velocity.
template <class Rng>
RandomPair random_pair(Rng& rng, const SafetyConfig& cfg, double extent = 6.0) {
    std::uniform_real_distribution<double> pos(-extent, extent);
    std::uniform_real_distribution<double> ang(-3.14159, 3.14159);
    std::uniform_real_distribution<double> speed(0.5, 3.0);
    std::uniform_real_distribution<double> turn(-1.0, 1.0);
    for (;;) {
        RandomPair rp;
        rp.i = {{pos(rng), pos(rng)}, ang(rng), speed(rng), turn(rng)};
        rp.j = {{pos(rng), pos(rng)}, ang(rng), speed(rng), turn(rng)};
        const Vec2 d = rp.j.p - rp.i.p;
        const Vec2 dv = velocity(rp.j) - velocity(rp.i);
        if (std::hypot(d.x, d.y) < 1.5 * cfg.barrier_radius()) continue;
        if (std::hypot(dv.x, dv.y) < 0.1) continue;
        return rp;
    }
}

}  // namespace oracle
