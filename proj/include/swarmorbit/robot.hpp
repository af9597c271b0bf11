#pragma once

#include "swarmorbit/geometry.hpp"

namespace swarmorbit {

// Sense of travel around the closed path. The overtaking rule is stated for
// clockwise orbits; counter-clockwise robots use the mirrored rule.
enum class Orientation { clockwise, counter_clockwise };

constexpr double orientation_sign(Orientation o) {
    return o == Orientation::clockwise ? 1.0 : -1.0;
}

struct RobotState {
    int id = 0;
    Vec2 p;
    double theta = 0.0;  // canonical in (-pi, pi]
    double s = 1.0;      // constant forward speed
    bool active = true;
    int swarm = 0;
    Orientation direction = Orientation::clockwise;
    // Turn rate applied over the previous step; observable by neighbours and
    // used as their estimate of this robot's (fixed) input.
    double omega = 0.0;

    Vec2 velocity() const { return s * unit_heading(theta); }
};

}  // namespace swarmorbit
