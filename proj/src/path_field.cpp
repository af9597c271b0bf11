#include "swarmorbit/path_field.hpp"

#include <string>

namespace swarmorbit {

namespace {

constexpr double kFieldEps = 1e-9;

Mat2 rotate_e(const Mat2& m) {
    // E * M with E = [[0, 1], [-1, 0]]
    return {m.yx, m.yy, -m.xx, -m.xy};
}

}  // namespace

double ImplicitPath::value(const Vec2& p) const {
    const Vec2 q = p - center;
    if (kind == Kind::circle) return dot(q, q) - a * a;
    const double u = q.x / a;
    const double v = q.y / b;
    return u * u + v * v - 1.0;
}

Vec2 ImplicitPath::gradient(const Vec2& p) const {
    const Vec2 q = p - center;
    if (kind == Kind::circle) return 2.0 * q;
    return {2.0 * q.x / (a * a), 2.0 * q.y / (b * b)};
}

Mat2 ImplicitPath::hessian(const Vec2&) const {
    if (kind == Kind::circle) return {2.0, 0.0, 0.0, 2.0};
    return {2.0 / (a * a), 0.0, 0.0, 2.0 / (b * b)};
}

double ImplicitPath::error_scale() const {
    return kind == Kind::circle ? a * a : 1.0;
}

Vec2 ImplicitPath::point_at(double alpha, double level_factor) const {
    return center + Vec2{level_factor * a * std::cos(alpha), level_factor * b * std::sin(alpha)};
}

void ImplicitPath::validate() const {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw ValidationError("path: semi-axes must be finite and > 0");
    if (kind == Kind::circle && a != b)
        throw ValidationError("path: circle requires a == b");
    if (!std::isfinite(center.x) || !std::isfinite(center.y))
        throw ValidationError("path: center must be finite");
}

double path_error(const ImplicitPath& path, const Vec2& p) { return path.value(p); }

Vec2 path_normal(const ImplicitPath& path, const Vec2& p) {
    if (p == path.center)
        throw DegenerateGradientError("path_normal: gradient vanishes at the path center");
    return path.gradient(p);
}

Vec2 path_tangent(const ImplicitPath& path, const Vec2& p, Orientation dir) {
    return orientation_sign(dir) * rotate_e(path_normal(path, p));
}

Vec2 gvf(const ImplicitPath& path, const FieldGains& gains, const Vec2& p, Orientation dir) {
    const Vec2 n = path_normal(path, p);
    const double e = path.value(p);
    return orientation_sign(dir) * rotate_e(n) - gains.k_e * e * n;
}

Mat2 gvf_jacobian(const ImplicitPath& path, const FieldGains& gains, const Vec2& p,
                  Orientation dir) {
    const Vec2 n = path_normal(path, p);
    const double e = path.value(p);
    const Mat2 h = path.hessian(p);
    const Mat2 eh = rotate_e(h);
    const double sign = orientation_sign(dir);
    const double k = gains.k_e;
    return {sign * eh.xx - k * (n.x * n.x + e * h.xx), sign * eh.xy - k * (n.x * n.y + e * h.xy),
            sign * eh.yx - k * (n.y * n.x + e * h.yx), sign * eh.yy - k * (n.y * n.y + e * h.yy)};
}

FieldCourse field_course(const ImplicitPath& path, const FieldGains& gains, const Vec2& p,
                         const Vec2& velocity, Orientation dir) {
    const Vec2 field = gvf(path, gains, p, dir);
    const double len = norm(field);
    if (len < kFieldEps)
        throw DegenerateFieldError("field_course: guiding field vanishes at (" +
                                   std::to_string(p.x) + ", " + std::to_string(p.y) + ")");
    const Vec2 m = field / len;
    const Vec2 jv = gvf_jacobian(path, gains, p, dir) * velocity;
    // (I - m m^T) J v / |F|
    const Vec2 m_dot = (jv - dot(m, jv) * m) / len;
    return {std::atan2(m.y, m.x), dot(m, rotate_e(m_dot))};
}

double heading_command(double theta, const FieldCourse& course, double k_d) {
    return course.chi_dot - k_d * wrap_angle(theta - course.chi);
}

double heading_ref(const ImplicitPath& path, const FieldGains& gains, const RobotState& state) {
    const FieldCourse course =
        field_course(path, gains, state.p, state.velocity(), state.direction);
    return heading_command(state.theta, course, gains.k_d);
}

}  // namespace swarmorbit
