#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "mlm/alpha.hpp"

using mlm::AlphaFunction;
using Catch::Approx;

TEST_CASE("constant evaluation and derivative") {
    auto a = AlphaFunction::constant(1.5);
    CHECK(a.evaluate(0.3) == 1.5);
    CHECK(a.evaluate(0.0) == 1.5);
    CHECK(a.derivative(0.7) == 0.0);
    auto [c, d] = a.bounds();
    CHECK(c == 1.5);
    CHECK(d == 1.5);
    CHECK(a.min_set_dimension() == 1.0);
}

TEST_CASE("affine evaluation, derivative, bounds") {
    auto a = AlphaFunction::affine(1.2, 0.6);
    CHECK(a.evaluate(0.5) == Approx(1.5).epsilon(1e-14));
    CHECK(a.derivative(0.7) == Approx(0.6).epsilon(1e-14));
    auto [c, d] = a.bounds();
    CHECK(c == Approx(1.2).epsilon(1e-14));
    CHECK(d == Approx(1.8).epsilon(1e-14));
    CHECK(a.min_set_dimension() == 0.0);
}

TEST_CASE("sinusoidal evaluation, derivative, bounds") {
    auto a = AlphaFunction::sinusoidal(1.5, 0.3, 1.0, 0.0);
    CHECK(a.evaluate(0.25) == Approx(1.8).epsilon(1e-12));
    CHECK(a.derivative(0.0) == Approx(0.6 * std::numbers::pi).epsilon(1e-12));
    auto [c, d] = a.bounds();
    CHECK(c == Approx(1.2).margin(1e-9));
    CHECK(d == Approx(1.8).margin(1e-9));
}

TEST_CASE("bounds agree with brute-force grid search") {
    auto check = [](const AlphaFunction& a) {
        double lo = 1e9, hi = -1e9;
        for (int i = 0; i <= 100000; ++i) {
            double v = a.evaluate(i / 100000.0);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        auto [c, d] = a.bounds();
        CHECK(c == Approx(lo).margin(1e-6));
        CHECK(d == Approx(hi).margin(1e-6));
    };
    check(AlphaFunction::constant(1.5));
    check(AlphaFunction::affine(1.2, 0.6));
    check(AlphaFunction::sinusoidal(1.5, 0.3, 2.0, 0.4));
    check(AlphaFunction::table({1.3, 1.7, 1.4, 1.6, 1.5}));
}

TEST_CASE("table kind interpolates knots and stays C1") {
    auto a = AlphaFunction::table({1.3, 1.7, 1.4, 1.6, 1.5});
    CHECK(a.evaluate(0.0) == Approx(1.3).epsilon(1e-12));
    CHECK(a.evaluate(0.25) == Approx(1.7).epsilon(1e-12));
    CHECK(a.evaluate(1.0) == Approx(1.5).epsilon(1e-12));
    // derivative continuity across a knot
    double h = 1e-7;
    double left = (a.evaluate(0.25) - a.evaluate(0.25 - h)) / h;
    double right = (a.evaluate(0.25 + h) - a.evaluate(0.25)) / h;
    CHECK(left == Approx(right).margin(1e-4));
    CHECK(a.derivative(0.25) == Approx(0.5 * (left + right)).margin(1e-4));
    // range stays inside the knot hull (monotone interpolation)
    for (int i = 0; i <= 1000; ++i) {
        double v = a.evaluate(i / 1000.0);
        CHECK(v >= 1.3 - 1e-12);
        CHECK(v <= 1.7 + 1e-12);
    }
}

TEST_CASE("domain and validity errors") {
    auto a = AlphaFunction::constant(1.5);
    CHECK_THROWS_AS(a.evaluate(-0.01), std::domain_error);
    CHECK_THROWS_AS(a.evaluate(1.01), std::domain_error);
    CHECK_THROWS_AS(AlphaFunction::constant(1.0), std::domain_error);
    CHECK_THROWS_AS(AlphaFunction::constant(2.0), std::domain_error);
    CHECK_THROWS_AS(AlphaFunction::affine(1.0, 1.5), std::domain_error);
}

TEST_CASE("describe round-trips the parameters") {
    CHECK(AlphaFunction::constant(1.5).describe() ==
          AlphaFunction::constant(1.5).describe());
    CHECK(AlphaFunction::constant(1.5).describe() !=
          AlphaFunction::affine(1.2, 0.6).describe());
}

TEST_CASE("min_set_dimension is settable metadata") {
    auto a = AlphaFunction::affine(1.2, 0.6);
    a.set_min_set_dimension(0.5);
    CHECK(a.min_set_dimension() == 0.5);
    CHECK_THROWS_AS(a.set_min_set_dimension(1.5), std::domain_error);
}
