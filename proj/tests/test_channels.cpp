// SPDX-License-Identifier: Apache-2.0
// Part of jambound: mutual-information limits for coarsely quantized
// MIMO receivers under jamming.

#include <cmath>
#include <complex>

#include <catch2/catch_amalgamated.hpp>

#include <jambound/channels.hpp>
#include <jambound/linalg.hpp>

using namespace jambound;

TEST_CASE("steering vectors at reference angles", "[channels]") {
    // broadside: zero phase progression
    const auto broadside = ula_steering(kPi / 2.0, 4);
    REQUIRE(broadside.size() == 4);
    for (const auto& e : broadside) {
        CHECK(std::abs(e - std::complex<double>(1.0, 0.0)) <= 1e-12);
    }
    // endfire: alternating signs at half-wavelength spacing
    const auto endfire = ula_steering(0.0, 2);
    CHECK(std::abs(endfire[0] - std::complex<double>(1.0, 0.0)) <= 1e-12);
    CHECK(std::abs(endfire[1] + std::complex<double>(1.0, 0.0)) <= 1e-12);
    // unit-modulus entries make the norm the antenna count
    const auto v = ula_steering(1.234, 16);
    double norm_sq = 0.0;
    for (const auto& e : v) norm_sq += std::norm(e);
    CHECK(norm_sq == Catch::Approx(16.0).margin(1e-12));
}

TEST_CASE("line-of-sight pairs have deterministic row power", "[channels]") {
    ChannelModel model;
    model.tag = ChannelModel::Tag::los_ula;  // default 60-degree half sector
    const ChannelPair cp = sample_los_pair(SeededRng(1), 16, 2, 1, model);
    REQUIRE(cp.H.rows() == 16);
    REQUIRE(cp.H.cols() == 2);
    REQUIRE(cp.J.cols() == 1);
    for (std::size_t b = 0; b < 16; ++b) {
        CHECK(row_norm_sq(cp.H, b) == Catch::Approx(2.0).margin(1e-12));
        CHECK(row_norm_sq(cp.J, b) == Catch::Approx(1.0).margin(1e-12));
    }
    // phase reference: the first antenna sees no progression
    for (std::size_t u = 0; u < 2; ++u) {
        CHECK(std::abs(cp.H(0, u) - std::complex<double>(1.0, 0.0)) <= 1e-12);
    }
}

TEST_CASE("line-of-sight angles stay inside the sector", "[channels]") {
    ChannelModel model;
    model.tag = ChannelModel::Tag::los_ula;
    const double max_abs_phase = kPi * std::cos(kPi / 2.0 - model.sector_half_angle);
    const SeededRng rng(42);
    double seen = 0.0;
    for (std::uint64_t t = 0; t < 200; ++t) {
        const ChannelPair cp = sample_los_pair(rng.substream(t), 4, 2, 1, model);
        for (std::size_t u = 0; u < 2; ++u) {
            const double phase = std::arg(cp.H(1, u));
            CHECK(std::fabs(phase) <= max_abs_phase + 1e-9);
            seen = std::max(seen, std::fabs(phase));
        }
    }
    // the sector is actually used, not collapsed to broadside
    CHECK(seen > 0.75 * max_abs_phase);
}

TEST_CASE("rayleigh pairs: dimensions, moments, independence", "[channels]") {
    const SeededRng rng(7);
    const ChannelPair one = sample_rayleigh_pair(rng, 2, 2, 1);
    REQUIRE(one.H.rows() == 2);
    REQUIRE(one.H.cols() == 2);
    REQUIRE(one.J.cols() == 1);
    const ChannelPair nojam = sample_rayleigh_pair(rng, 2, 2, 0);
    REQUIRE(nojam.J.cols() == 0);
    // the user channel draw does not depend on whether a jammer is drawn
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            CHECK(one.H(r, c) == nojam.H(r, c));
        }
    }

    double row_power = 0.0;
    std::complex<double> cross = 0.0;
    const std::size_t n = 10000;
    for (std::uint64_t t = 0; t < n; ++t) {
        const ChannelPair cp = sample_rayleigh_pair(rng.substream(t), 2, 2, 1);
        for (std::size_t b = 0; b < 2; ++b) row_power += row_norm_sq(cp.H, b);
        cross += cp.H(0, 0) * std::conj(cp.H(0, 1));
    }
    CHECK(row_power / double(2 * n) == Catch::Approx(2.0).epsilon(0.05));
    CHECK(std::abs(cross) / double(n) < 0.05);
}

TEST_CASE("channel sampling is reproducible", "[channels]") {
    const SeededRng rng(12345);
    const ChannelPair a = sample_rayleigh_pair(rng, 8, 2, 1);
    const ChannelPair b = sample_rayleigh_pair(rng, 8, 2, 1);
    double diff = 0.0;
    for (std::size_t r = 0; r < 8; ++r) {
        for (std::size_t c = 0; c < 2; ++c) diff = std::max(diff, std::abs(a.H(r, c) - b.H(r, c)));
        diff = std::max(diff, std::abs(a.J(r, 0) - b.J(r, 0)));
    }
    CHECK(diff == 0.0);

    ChannelModel los;
    los.tag = ChannelModel::Tag::los_ula;
    const ChannelPair la = sample_channel_pair(rng, 8, 2, 1, los);
    const ChannelPair lb = sample_los_pair(rng, 8, 2, 1, los);
    for (std::size_t r = 0; r < 8; ++r) {
        for (std::size_t c = 0; c < 2; ++c) CHECK(la.H(r, c) == lb.H(r, c));
    }
}

TEST_CASE("model validation", "[channels]") {
    ChannelModel bad;
    bad.tag = ChannelModel::Tag::los_ula;
    bad.sector_half_angle = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    bad.sector_half_angle = 2.0;  // beyond a quarter circle
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    // a rayleigh model carries no angle constraint
    ChannelModel ray;
    ray.sector_half_angle = -1.0;
    CHECK_NOTHROW(ray.validate());
    // and the line-of-sight sampler refuses a mismatched tag
    CHECK_THROWS_AS(sample_los_pair(SeededRng(1), 2, 1, 0, ray), std::domain_error);
}
