#include <doctest.h>

#include <cmath>
#include <numbers>

#include "swarmorbit/geometry.hpp"

using namespace swarmorbit;
using std::numbers::pi;

TEST_CASE("rotate_e is a clockwise quarter turn") {
    CHECK(rotate_e({1, 0}) == Vec2{0, -1});
    CHECK(rotate_e({0, 1}) == Vec2{1, 0});
    CHECK(rotate_e(rotate_e({3, 4})) == Vec2{-3, -4});
}

TEST_CASE("rotate_e preserves length and is orthogonal") {
    for (double a = -3.0; a < 3.0; a += 0.37) {
        const Vec2 v{std::cos(a) * 2.5, std::sin(a) * 2.5};
        CHECK(norm(rotate_e(v)) == doctest::Approx(norm(v)));
        CHECK(dot(v, rotate_e(v)) == doctest::Approx(0.0).epsilon(1e-15));
    }
}

TEST_CASE("wrap_angle maps into (-pi, pi]") {
    CHECK(wrap_angle(0.0) == 0.0);
    CHECK(wrap_angle(3 * pi) == doctest::Approx(pi));
    CHECK(wrap_angle(-pi) == doctest::Approx(pi));
    CHECK(wrap_angle(pi) == doctest::Approx(pi));
    CHECK(wrap_angle(-2.5 * pi) == doctest::Approx(-0.5 * pi));
    for (double a = -40.0; a < 40.0; a += 0.731) {
        const double w = wrap_angle(a);
        CHECK(w > -pi);
        CHECK(w <= pi);
        CHECK(std::remainder(a - w, 2 * pi) == doctest::Approx(0.0).epsilon(1e-9));
    }
}

TEST_CASE("wrap_angle rejects non-finite input") {
    CHECK_THROWS_AS(wrap_angle(std::nan("")), DomainError);
    CHECK_THROWS_AS(wrap_angle(INFINITY), DomainError);
}

TEST_CASE("class-K gains") {
    CHECK(class_k_eval({2.0, ClassK::Form::cubic}, 0.0) == 0.0);
    CHECK(class_k_eval({2.0, ClassK::Form::cubic}, 1.0) == 2.0);
    CHECK(class_k_eval({0.5, ClassK::Form::linear}, 4.0) == 2.0);
    // odd and increasing
    const ClassK k{1.5, ClassK::Form::cubic};
    double prev = k(-3.0);
    for (double h = -2.9; h < 3.0; h += 0.1) {
        CHECK(k(h) > prev);
        CHECK(k(-h) == doctest::Approx(-k(h)));
        prev = k(h);
    }
}

TEST_CASE("normalize rejects the zero vector") {
    CHECK_THROWS_AS(normalize({0, 0}), DomainError);
    CHECK(norm(normalize({3, 4})) == doctest::Approx(1.0));
}
