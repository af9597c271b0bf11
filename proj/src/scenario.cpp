#include "swarmorbit/scenario.hpp"

#include <cmath>

namespace swarmorbit {

int Scenario::robot_count() const {
    int n = 0;
    for (const RobotGroup& g : robots) n += g.count;
    return n;
}

void Scenario::validate() const {
    std::vector<std::string> bad;
    auto check = [&bad](bool ok, std::string msg) {
        if (!ok) bad.push_back(std::move(msg));
    };
    auto finite = [](double v) { return std::isfinite(v); };

    try {
        path.validate();
    } catch (const ValidationError& e) {
        bad.emplace_back(e.what());
    }
    try {
        safety.validate();
    } catch (const ValidationError& e) {
        bad.emplace_back(e.what());
    }
    check(gains.k_e >= 0.0 && finite(gains.k_e), "gains.k_e must be >= 0");
    check(gains.k_d > 0.0 && finite(gains.k_d), "gains.k_d must be > 0");
    check(monitor.eps_pre > 0.0 && finite(monitor.eps_pre), "monitor.eps_pre must be > 0");
    check(monitor.delta_pre > 0.0 && finite(monitor.delta_pre), "monitor.delta_pre must be > 0");
    check(dt > 0.0 && finite(dt), "run.dt must be > 0");
    check(finite(duration) && duration >= dt, "run.duration must be >= run.dt");
    check(record_every >= 1, "run.record_every must be >= 1");

    bool any_launch = false;
    for (std::size_t g = 0; g < robots.size(); ++g) {
        const RobotGroup& grp = robots[g];
        const std::string key = "robots[" + std::to_string(g) + "]";
        check(grp.count >= 0, key + ".count must be >= 0");
        check(grp.speed.lo > 0.0 && finite(grp.speed.lo), key + ".speed must be > 0");
        check(finite(grp.speed.hi) && grp.speed.lo <= grp.speed.hi,
              key + ".speed interval must satisfy lo <= hi");
        switch (grp.spawn.kind) {
            case SpawnSpec::Kind::launch: any_launch = true; break;
            case SpawnSpec::Kind::ring:
                check(grp.spawn.level > 0.0 && finite(grp.spawn.level), key + ".spawn.level must be > 0");
                check(grp.spawn.arc > 0.0 && grp.spawn.arc <= 1.0, key + ".spawn.arc must be in (0,1]");
                check(finite(grp.spawn.phase), key + ".spawn.phase must be finite");
                break;
            case SpawnSpec::Kind::point:
                check(grp.count <= 1, key + ".count must be <= 1 for point spawn");
                check(finite(grp.spawn.position.x) && finite(grp.spawn.position.y),
                      key + ".spawn.position must be finite");
                break;
        }
        if (grp.spawn.heading) check(finite(*grp.spawn.heading), key + ".spawn.heading must be finite");
    }
    if (any_launch) {
        check(launch.has_value(), "launch section required by robots with spawn: launch");
    }
    if (launch) {
        check(launch->spacing_multiple > 1.0 && finite(launch->spacing_multiple),
              "launch.spacing_multiple must be > 1");
        check(launch->carrier_speed >= 0.0 && finite(launch->carrier_speed),
              "launch.carrier_speed must be >= 0");
        check(finite(launch->origin.x) && finite(launch->origin.y), "launch.origin must be finite");
    }

    if (bad.empty()) return;
    std::string msg = "invalid scenario: " + bad.front();
    for (std::size_t k = 1; k < bad.size(); ++k) msg += "; " + bad[k];
    throw ValidationError(msg);
}

bool operator==(const SpeedSpec& a, const SpeedSpec& b) { return a.lo == b.lo && a.hi == b.hi; }

bool operator==(const SpawnSpec& a, const SpawnSpec& b) {
    return a.kind == b.kind && a.level == b.level && a.phase == b.phase && a.arc == b.arc &&
           a.position == b.position && a.heading == b.heading;
}

bool operator==(const RobotGroup& a, const RobotGroup& b) {
    return a.count == b.count && a.speed == b.speed && a.swarm == b.swarm &&
           a.direction == b.direction && a.ignore_swarms == b.ignore_swarms && a.spawn == b.spawn;
}

bool operator==(const LaunchSpec& a, const LaunchSpec& b) {
    return a.origin == b.origin && a.carrier_speed == b.carrier_speed &&
           a.spacing_multiple == b.spacing_multiple;
}

bool operator==(const MonitorConfig& a, const MonitorConfig& b) {
    return a.eps_pre == b.eps_pre && a.delta_pre == b.delta_pre;
}

bool operator==(const ImplicitPath& a, const ImplicitPath& b) {
    return a.kind == b.kind && a.center == b.center && a.a == b.a && a.b == b.b;
}

bool operator==(const FieldGains& a, const FieldGains& b) { return a.k_e == b.k_e && a.k_d == b.k_d; }

bool operator==(const SafetyConfig& a, const SafetyConfig& b) {
    return a.r == b.r && a.d_exp == b.d_exp && a.kappa.gamma == b.kappa.gamma &&
           a.kappa.form == b.kappa.form && a.omega_max == b.omega_max && a.clearance == b.clearance &&
           a.sensing_range == b.sensing_range && a.opposing_as_static == b.opposing_as_static &&
           a.neighbor_input == b.neighbor_input;
}

bool operator==(const Scenario& a, const Scenario& b) {
    return a.name == b.name && a.path == b.path && a.gains == b.gains && a.safety == b.safety &&
           a.monitor == b.monitor && a.robots == b.robots && a.launch == b.launch &&
           a.duration == b.duration && a.dt == b.dt && a.record_every == b.record_every &&
           a.halt_on_collision == b.halt_on_collision && a.fail_on_saturation == b.fail_on_saturation;
}

}  // namespace swarmorbit
