#include <cmath>
#include <numbers>

#include <doctest.h>

#include "nlslab/weights.hpp"

using namespace nlslab;

TEST_CASE("inner branch values at the analytic landmarks") {
    const double M = 2.0;
    const WeightSpec w = build_weight(M);
    const double e = std::numbers::e;
    // f(M/sqrt(e)) = 3M/(4e)
    CHECK(w.f(M / std::sqrt(e)) == doctest::Approx(3.0 * M / (4.0 * e)).epsilon(1e-13));
    // Lap a at r = M/e: f'' + f'/r = 2/M
    CHECK(w.lap(M / e) == doctest::Approx(2.0 / M).epsilon(1e-13));
    // inner region contributes no regular bilaplacian density
    CHECK(w.bilap_regular(M / (2.0 * e)) == 0.0);
}

TEST_CASE("outer branch calculus") {
    const double M = 2.0;
    const WeightSpec w = build_weight(M);
    CHECK(w.fp(3.0 * M) == doctest::Approx(100.0).epsilon(1e-14));
    CHECK(w.fpp(3.0 * M) == 0.0);
    CHECK(w.lap(2.0 * M) == doctest::Approx(100.0 / (2.0 * M)).epsilon(1e-13));
    CHECK(w.bilap_regular(2.0 * M) ==
          doctest::Approx(-100.0 / (8.0 * M * M * M)).epsilon(1e-13));
}

TEST_CASE("the profile is C2 across both junctions") {
    const double M = 1.7;
    const WeightSpec w = build_weight(M);
    const double h = 1e-7;
    for (double r0 : {w.r_inner, w.r_outer}) {
        CHECK(std::abs(w.f(r0 + h) - w.f(r0 - h)) <= 300.0 * h);
        CHECK(std::abs(w.fp(r0 + h) - w.fp(r0 - h)) <= 1e-3);
        CHECK(std::abs(w.fpp(r0 + h) - w.fpp(r0 - h)) <= 1e-2);
    }
}

TEST_CASE("convexity certificate: f'' >= 0 and f' > 0 away from 0") {
    const double M = 3.0;
    const WeightSpec w = build_weight(M);
    for (int i = 0; i < 10000; ++i) {
        const double r = M * std::pow(10.0, -4.0 + 6.0 * (i + 0.5) / 10000.0);
        CHECK(w.fpp(r) >= -1e-12);
        CHECK(w.fp(r) > 0.0);
    }
}

TEST_CASE("delta coefficient and biharmonic split") {
    const double M = 2.5;
    const WeightSpec w = build_weight(M);
    CHECK(w.delta_coeff == doctest::Approx(4.0 * std::numbers::pi / M).epsilon(1e-14));
    const BiharmonicSplit split = biharmonic_split(w);
    CHECK(split.delta_coeff == w.delta_coeff);
    for (double r : {0.3 * M, 0.8 * M, 2.0 * M, 10.0 * M}) {
        CHECK(split.regular_density(r) == doctest::Approx(w.bilap_regular(r)).epsilon(1e-13));
    }
}

TEST_CASE("weight_calculus mirrors the spec and flags the origin") {
    const double M = 2.0;
    const WeightSpec w = build_weight(M);
    for (double r : {0.1 * M, 0.5 * M, 0.9 * M, 3.0 * M}) {
        const WeightCalculus c = weight_calculus(w, r);
        CHECK(c.f == doctest::Approx(w.f(r)).epsilon(1e-14));
        CHECK(c.fp == doctest::Approx(w.fp(r)).epsilon(1e-14));
        CHECK(c.lap == doctest::Approx(w.lap(r)).epsilon(1e-14));
        CHECK_FALSE(c.lap_singular);
    }
    CHECK(weight_calculus(w, 0.0).lap_singular);
}

TEST_CASE("balance_M follows the cube-root law") {
    CHECK(balance_M(8.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(balance_M(1.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("radial_weight carries the delta flag and matches the spec") {
    const WeightSpec spec = build_weight(2.0);
    const RadialWeight w = radial_weight(spec);
    CHECK(w.has_delta);
    for (double r : {0.2, 0.9, 1.5, 5.0}) {
        CHECK(w.fp(r) == doctest::Approx(spec.fp(r)).epsilon(1e-14));
        CHECK(w.lap(r) == doctest::Approx(spec.lap(r)).epsilon(1e-14));
        CHECK(w.bilap_regular(r) == doctest::Approx(spec.bilap_regular(r)).epsilon(1e-14));
    }
}

TEST_CASE("build_weight validates M") {
    CHECK_THROWS(build_weight(0.0));
    CHECK_THROWS(build_weight(-1.0));
}
