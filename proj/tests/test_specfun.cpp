// SPDX-License-Identifier: Apache-2.0
// Part of jambound: mutual-information limits for coarsely quantized
// MIMO receivers under jamming.

#include <cmath>
#include <limits>
#include <stdexcept>

#include <catch2/catch_amalgamated.hpp>

#include <jambound/specfun.hpp>

using namespace jambound;

// Reference values computed with a 50-digit arbitrary-precision
// implementation and rounded to 20 significant digits.

TEST_CASE("erf matches high-precision references", "[specfun]") {
    CHECK(jambound::erf(1.0) == Catch::Approx(0.84270079294971486934).margin(1e-12));
    CHECK(jambound::erf(0.7071067811865476) ==
          Catch::Approx(0.68268949213708589717).margin(1e-12));
    CHECK(jambound::erf(3.0) == Catch::Approx(0.99997790950300141456).margin(1e-12));
    CHECK(jambound::erf(0.0) == 0.0);
}

TEST_CASE("erfc matches high-precision references", "[specfun]") {
    CHECK(jambound::erfc(-1.0) == Catch::Approx(1.8427007929497148693).margin(1e-12));
    CHECK(jambound::erfc(5.0) ==
          Catch::Approx(1.5374597944280348502e-12).epsilon(1e-10));
    CHECK(jambound::erfc(10.0) ==
          Catch::Approx(2.088487583762544757e-45).epsilon(1e-10));
    // deep tail, far below what a 1 - erf evaluation could resolve
    CHECK(jambound::erfc(26.0) ==
          Catch::Approx(5.6631924088561428465e-296).epsilon(1e-10));
    CHECK(jambound::erfc(0.0) == 1.0);
}

TEST_CASE("erf and erfc take their limit values at infinity", "[specfun]") {
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(jambound::erf(inf) == 1.0);
    CHECK(jambound::erf(-inf) == -1.0);
    CHECK(jambound::erfc(inf) == 0.0);
    CHECK(jambound::erfc(-inf) == 2.0);
    CHECK_THROWS_AS(jambound::erf(std::nan("")), std::domain_error);
    CHECK_THROWS_AS(jambound::erfc(std::nan("")), std::domain_error);
}

TEST_CASE("erf and erfc are consistent with each other", "[specfun]") {
    for (double x : {-6.0, -3.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0, 3.5, 4.0, 8.0}) {
        CAPTURE(x);
        CHECK(std::fabs(jambound::erf(x) + jambound::erfc(x) - 1.0) <= 1e-12);
        CHECK(std::fabs(jambound::erf(-x) + jambound::erf(x)) <= 1e-14);
        CHECK(std::fabs(jambound::erfc(-x) + jambound::erfc(x) - 2.0) <= 1e-12);
    }
}

TEST_CASE("erf agrees with the C library implementation", "[specfun]") {
    for (int i = 0; i <= 120; ++i) {
        const double x = 0.05 * double(i);
        CAPTURE(x);
        CHECK(std::fabs(jambound::erf(x) - std::erf(x)) <= 1e-9);
    }
    for (int i = 0; i <= 50; ++i) {
        const double x = 0.5 * double(i);
        CAPTURE(x);
        CHECK(jambound::erfc(x) == Catch::Approx(std::erfc(x)).epsilon(1e-9));
    }
}

TEST_CASE("erf is odd, increasing, and below its tangent at zero", "[specfun]") {
    double prev = jambound::erf(-6.0);
    for (int i = 1; i <= 48; ++i) {
        const double x = -6.0 + 0.25 * double(i);
        const double y = jambound::erf(x);
        CAPTURE(x);
        CHECK(y > prev);
        prev = y;
        if (x > 0.0) {
            CHECK(y <= 1.1283791670955126 * x * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("probability type validates and clamps", "[specfun]") {
    CHECK(Probability(0.5).value() == 0.5);
    CHECK(Probability(0.0).value() == 0.0);
    CHECK(Probability(1.0).value() == 1.0);
    // tiny numerical overshoot is clamped, real violations throw
    CHECK(Probability(1.0 + 5e-13).value() == 1.0);
    CHECK(Probability(-5e-13).value() == 0.0);
    CHECK_THROWS_AS(Probability(1.01), std::domain_error);
    CHECK_THROWS_AS(Probability(-0.01), std::domain_error);
    CHECK_THROWS_AS(Probability(std::nan("")), std::domain_error);
}

TEST_CASE("binary entropy values and symmetry", "[specfun]") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == 1.0);
    CHECK(binary_entropy(0.25) == Catch::Approx(0.81127812445913286391).margin(1e-14));
    for (double p : {0.01, 0.1, 0.3, 0.47}) {
        CAPTURE(p);
        CHECK(std::fabs(binary_entropy(p) - binary_entropy(1.0 - p)) <= 1e-14);
    }
    CHECK(binary_entropy(Probability(0.25)) == binary_entropy(0.25));
    CHECK_THROWS_AS(binary_entropy(1.2), std::domain_error);
}

TEST_CASE("clipped binary entropy saturates above one half", "[specfun]") {
    CHECK(clipped_binary_entropy(0.25) ==
          Catch::Approx(0.81127812445913286391).margin(1e-14));
    CHECK(clipped_binary_entropy(0.5) == 1.0);
    CHECK(clipped_binary_entropy(0.9) == 1.0);
    // arguments above 1 are legal: the clip handles loose flip ceilings
    CHECK(clipped_binary_entropy(1.5957691216057307) == 1.0);
    CHECK(clipped_binary_entropy(0.0) == 0.0);
    CHECK_THROWS_AS(clipped_binary_entropy(-0.1), std::domain_error);
}
