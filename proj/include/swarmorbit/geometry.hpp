#pragma once

#include <cmath>
#include <numbers>

#include "swarmorbit/errors.hpp"

namespace swarmorbit {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }

    friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
constexpr Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
constexpr Vec2 operator/(const Vec2& a, double s) { return {a.x / s, a.y / s}; }

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double norm(const Vec2& v) { return std::hypot(v.x, v.y); }

// Unit vector; throws for the zero vector.
inline Vec2 normalize(const Vec2& v) {
    const double n = norm(v);
    if (!(n > 0.0)) throw DomainError("normalize: zero-length vector");
    return v / n;
}

// E = R(-pi/2) = [[0, 1], [-1, 0]]. Tangents built as E * gradient run
// clockwise around convex level sets.
constexpr Vec2 rotate_e(const Vec2& v) { return {v.y, -v.x}; }

// 2x2 symmetric/general matrix, row-major.
struct Mat2 {
    double xx = 0.0, xy = 0.0;
    double yx = 0.0, yy = 0.0;
};

constexpr Vec2 operator*(const Mat2& m, const Vec2& v) {
    return {m.xx * v.x + m.xy * v.y, m.yx * v.x + m.yy * v.y};
}

inline Vec2 unit_heading(double theta) { return {std::cos(theta), std::sin(theta)}; }

// Canonical representative of theta in (-pi, pi].
inline double wrap_angle(double theta) {
    if (!std::isfinite(theta)) throw DomainError("wrap_angle: non-finite angle");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double w = std::remainder(theta, two_pi);
    if (w <= -std::numbers::pi) w += two_pi;
    return w;
}

// Class-K gain kappa(h). Both forms are odd, so the function is defined
// (and strictly increasing) for negative h as well.
struct ClassK {
    enum class Form { cubic, linear };

    double gamma = 1.0;
    Form form = Form::cubic;

    double operator()(double h) const {
        switch (form) {
            case Form::cubic: return gamma * h * h * h;
            case Form::linear: return gamma * h;
        }
        return 0.0;
    }
};

inline double class_k_eval(const ClassK& k, double h) { return k(h); }

}  // namespace swarmorbit
