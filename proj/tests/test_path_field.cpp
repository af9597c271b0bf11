#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "swarmorbit/path_field.hpp"

using namespace swarmorbit;
using std::numbers::pi;

namespace {

void check_vec(const Vec2& got, const Vec2& want, double tol = 1e-12) {
    CHECK(got.x == doctest::Approx(want.x).epsilon(tol));
    CHECK(got.y == doctest::Approx(want.y).epsilon(tol));
}

const ImplicitPath kCircle = ImplicitPath::circle({0, 0}, 1.0);
const ImplicitPath kEllipse = ImplicitPath::ellipse({0, 0}, 2.0, 1.0);

}  // namespace

TEST_CASE("path error values") {
    CHECK(path_error(kEllipse, {2, 0}) == 0.0);
    CHECK(path_error(kEllipse, {0, 0}) == -1.0);
    CHECK(path_error(kCircle, {2, 0}) == 3.0);
}

TEST_CASE("path normal") {
    check_vec(path_normal(kCircle, {1, 0}), {2, 0});
    check_vec(path_normal(kCircle, {0, -1}), {0, -2});
    check_vec(path_normal(kEllipse, {2, 0}), {1, 0});
    CHECK_THROWS_AS(path_normal(kCircle, {0, 0}), DegenerateGradientError);
    CHECK_THROWS_AS(path_normal(ImplicitPath::ellipse({3, -1}, 4, 2), {3, -1}), DegenerateGradientError);
}

TEST_CASE("path tangent runs clockwise, counter-clockwise flips it") {
    check_vec(path_tangent(kCircle, {1, 0}), {0, -2});
    check_vec(path_tangent(kCircle, {0, 1}), {2, 0});
    check_vec(path_tangent(kEllipse, {0, 1}), {2, 0});
    check_vec(path_tangent(kCircle, {1, 0}, Orientation::counter_clockwise), {0, 2});
}

TEST_CASE("guiding field") {
    check_vec(gvf(kCircle, {1.0, 1.0}, {1, 0}), {0, -2});
    check_vec(gvf(kCircle, {1.0, 1.0}, {2, 0}), {-12, -4});
    check_vec(gvf(kCircle, {0.0, 1.0}, {5, 5}), path_tangent(kCircle, {5, 5}));
}

TEST_CASE("gradient, hessian and field jacobian agree with finite differences") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    const ImplicitPath paths[] = {ImplicitPath::circle({0.5, -1}, 2.0),
                                  ImplicitPath::ellipse({1, 2}, 3.0, 1.5)};
    const double h = 1e-6;
    for (const auto& path : paths) {
        for (auto dir : {Orientation::clockwise, Orientation::counter_clockwise}) {
            for (int k = 0; k < 50; ++k) {
                const Vec2 p{u(rng), u(rng)};
                const Vec2 dx{h, 0}, dy{0, h};
                const Vec2 g = path.gradient(p);
                CHECK(g.x == doctest::Approx((path.value(p + dx) - path.value(p - dx)) / (2 * h)).epsilon(1e-6));
                CHECK(g.y == doctest::Approx((path.value(p + dy) - path.value(p - dy)) / (2 * h)).epsilon(1e-6));
                const Mat2 H = path.hessian(p);
                const Vec2 hx = (path.gradient(p + dx) - path.gradient(p - dx)) / (2 * h);
                const Vec2 hy = (path.gradient(p + dy) - path.gradient(p - dy)) / (2 * h);
                CHECK(H.xx == doctest::Approx(hx.x).epsilon(1e-6));
                CHECK(H.yx == doctest::Approx(hx.y).epsilon(1e-6));
                CHECK(H.xy == doctest::Approx(hy.x).epsilon(1e-6));
                CHECK(H.yy == doctest::Approx(hy.y).epsilon(1e-6));

                const FieldGains gains{0.7, 1.0};
                const Mat2 J = gvf_jacobian(path, gains, p, dir);
                const Vec2 jx = (gvf(path, gains, p + dx, dir) - gvf(path, gains, p - dx, dir)) / (2 * h);
                const Vec2 jy = (gvf(path, gains, p + dy, dir) - gvf(path, gains, p - dy, dir)) / (2 * h);
                const double scale = 1.0 + std::abs(J.xx) + std::abs(J.xy) + std::abs(J.yx) + std::abs(J.yy);
                CHECK(std::abs(J.xx - jx.x) / scale < 1e-6);
                CHECK(std::abs(J.yx - jx.y) / scale < 1e-6);
                CHECK(std::abs(J.xy - jy.x) / scale < 1e-6);
                CHECK(std::abs(J.yy - jy.y) / scale < 1e-6);
            }
        }
    }
}

TEST_CASE("course rate matches the derivative of the field angle along the velocity") {
    const ImplicitPath path = ImplicitPath::ellipse({0, 0}, 5.0, 3.0);
    const FieldGains gains{1.0, 1.0};
    const Vec2 p{4.0, 2.5};
    const Vec2 v{-1.0, 2.0};
    const double dt = 1e-6;
    const auto angle = [&](const Vec2& q) {
        const Vec2 f = gvf(path, gains, q);
        return std::atan2(f.y, f.x);
    };
    const FieldCourse c = field_course(path, gains, p, v);
    CHECK(c.chi == doctest::Approx(angle(p)));
    CHECK(c.chi_dot == doctest::Approx(wrap_angle(angle(p + v * dt) - angle(p - v * dt)) / (2 * dt)).epsilon(1e-6));
}

TEST_CASE("heading command") {
    SUBCASE("aligned robot on a circle turns at s/R clockwise") {
        const ImplicitPath path = ImplicitPath::circle({0, 0}, 10.0);
        RobotState st;
        st.p = {10, 0};
        st.s = 5.0;
        st.theta = -pi / 2;
        for (double kd : {0.5, 1.0, 3.0}) {
            CHECK(heading_ref(path, {1.0, kd}, st) == doctest::Approx(-0.5).epsilon(1e-12));
        }
    }
    SUBCASE("pure proportional term") {
        CHECK(heading_command(0.2, {0.0, 0.0}, 2.0) == doctest::Approx(-0.4));
    }
    SUBCASE("opposite heading") {
        CHECK(heading_command(pi, {0.0, 0.3}, 1.0) == doctest::Approx(0.3 - pi));
    }
    SUBCASE("degenerate field") {
        // k_e e n cancels tau nowhere on a circle, but the centre has no gradient
        const ImplicitPath path = ImplicitPath::circle({0, 0}, 1.0);
        RobotState st;
        CHECK_THROWS_AS(heading_ref(path, {1.0, 1.0}, st), DomainError);
    }
}

TEST_CASE("path validation") {
    CHECK_THROWS_AS(ImplicitPath::circle({0, 0}, 0.0).validate(), ValidationError);
    CHECK_THROWS_AS(ImplicitPath::ellipse({0, 0}, 1.0, -2.0).validate(), ValidationError);
    CHECK_NOTHROW(ImplicitPath::ellipse({0, 0}, 1.0, 2.0).validate());
}

TEST_CASE("point_at lies on the requested level") {
    const ImplicitPath path = ImplicitPath::ellipse({1, -2}, 4.0, 2.0);
    for (double a = 0; a < 6.3; a += 0.5) {
        CHECK(path.value(path.point_at(a)) == doctest::Approx(0.0).epsilon(1e-12));
    }
}
