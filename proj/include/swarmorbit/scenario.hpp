#pragma once

#include <optional>
#include <string>
#include <vector>

#include "swarmorbit/path_field.hpp"
#include "swarmorbit/robot.hpp"
#include "swarmorbit/safety_cbf.hpp"

namespace swarmorbit {

// Uniform speed interval; lo == hi gives a fixed speed.
struct SpeedSpec {
    double lo = 1.0;
    double hi = 1.0;
};

struct SpawnSpec {
    enum class Kind {
        launch,  // released one by one from the carrier (needs Scenario::launch)
        ring,    // evenly spread over a scaled copy of the path
        point,   // single robot at an explicit position
    };

    Kind kind = Kind::ring;
    // ring: robots sit at path.point_at(phase - k * arc * 2pi / count, level)
    double level = 1.0;
    double phase = 0.0;
    double arc = 1.0;
    // point
    Vec2 position;
    // Initial heading; unset means "aligned with the robot's guiding field".
    std::optional<double> heading;
};

struct RobotGroup {
    int count = 1;
    SpeedSpec speed;
    int swarm = 0;
    Orientation direction = Orientation::clockwise;
    std::vector<int> ignore_swarms;
    SpawnSpec spawn;
};

// Carrier moving along +Y from `origin` at `carrier_speed`; a robot is
// released once the previously released one is spacing_multiple * r away
// from the carrier.
struct LaunchSpec {
    Vec2 origin;
    double carrier_speed = 0.0;
    double spacing_multiple = 2.5;
};

// Thresholds attributing overtake episodes to the pre-overtaking conditions
// (same level set, velocities aligned with the path tangent).
struct MonitorConfig {
    double eps_pre = 0.2;    // |e_j - e_i| bound, as a fraction of path.error_scale()
    double delta_pre = 0.5;  // |v_hat_i - tau_hat_i| + |v_hat_j - tau_hat_j| bound
};

struct Scenario {
    std::string name;
    ImplicitPath path;
    FieldGains gains;
    SafetyConfig safety;
    MonitorConfig monitor;
    std::vector<RobotGroup> robots;
    std::optional<LaunchSpec> launch;
    double duration = 10.0;
    double dt = 1e-3;
    int record_every = 1;
    bool halt_on_collision = false;
    bool fail_on_saturation = true;

    int robot_count() const;

    // Throws ValidationError listing every offending field.
    void validate() const;

    friend bool operator==(const Scenario&, const Scenario&);
};

bool operator==(const SpeedSpec&, const SpeedSpec&);
bool operator==(const SpawnSpec&, const SpawnSpec&);
bool operator==(const RobotGroup&, const RobotGroup&);
bool operator==(const LaunchSpec&, const LaunchSpec&);
bool operator==(const MonitorConfig&, const MonitorConfig&);
bool operator==(const ImplicitPath&, const ImplicitPath&);
bool operator==(const FieldGains&, const FieldGains&);
bool operator==(const SafetyConfig&, const SafetyConfig&);

}  // namespace swarmorbit
