#pragma once

#include "swarmorbit/geometry.hpp"
#include "swarmorbit/robot.hpp"

namespace swarmorbit {

// Closed convex path given as the zero-level set of phi.
//   circle:  phi(p) = |p - c|^2 - R^2
//   ellipse: phi(p) = ((x - cx)/a)^2 + ((y - cy)/b)^2 - 1
struct ImplicitPath {
    enum class Kind { circle, ellipse };

    Kind kind = Kind::circle;
    Vec2 center;
    double a = 1.0;
    double b = 1.0;

    static ImplicitPath circle(Vec2 center, double radius) {
        return {Kind::circle, center, radius, radius};
    }
    static ImplicitPath ellipse(Vec2 center, double a, double b) {
        return {Kind::ellipse, center, a, b};
    }

    double value(const Vec2& p) const;
    Vec2 gradient(const Vec2& p) const;
    Mat2 hessian(const Vec2& p) const;

    // Magnitude of phi that corresponds to "one path size" away from the
    // path; error tolerances are expressed as fractions of it.
    double error_scale() const;

    // Point on the level set phi = level_factor-scaled copy of the path at
    // parameter angle alpha (level_factor = 1 is the path itself).
    Vec2 point_at(double alpha, double level_factor = 1.0) const;

    void validate() const;
};

struct FieldGains {
    double k_e = 1.0;
    double k_d = 1.0;
};

double path_error(const ImplicitPath& path, const Vec2& p);

// n(p) = grad phi(p); throws DegenerateGradientError at the centre.
Vec2 path_normal(const ImplicitPath& path, const Vec2& p);

// tau(p) = E n(p) (clockwise); the counter-clockwise field uses -E n(p).
Vec2 path_tangent(const ImplicitPath& path, const Vec2& p,
                  Orientation dir = Orientation::clockwise);

// Guiding vector field tau(p) - k_e e(p) n(p).
Vec2 gvf(const ImplicitPath& path, const FieldGains& gains, const Vec2& p,
         Orientation dir = Orientation::clockwise);

// Jacobian of gvf with respect to p.
Mat2 gvf_jacobian(const ImplicitPath& path, const FieldGains& gains, const Vec2& p,
                  Orientation dir = Orientation::clockwise);

struct FieldCourse {
    double chi = 0.0;      // direction angle of the normalised field
    double chi_dot = 0.0;  // its rate along the actual velocity
};

// Desired course and its feedforward rate for a robot moving with
// `velocity` through p. Throws DegenerateFieldError if |gvf(p)| < 1e-9.
FieldCourse field_course(const ImplicitPath& path, const FieldGains& gains, const Vec2& p,
                         const Vec2& velocity, Orientation dir = Orientation::clockwise);

// omega_ref = chi_dot - k_d * wrap(theta - chi).
double heading_command(double theta, const FieldCourse& course, double k_d);

double heading_ref(const ImplicitPath& path, const FieldGains& gains, const RobotState& state);

}  // namespace swarmorbit
