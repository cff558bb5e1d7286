// SPDX-License-Identifier: Apache-2.0
// Part of jambound: mutual-information limits for coarsely quantized
// MIMO receivers under jamming.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "bounds.hpp"
#include "complex_matrix.hpp"
#include "linalg.hpp"
#include "philox.hpp"

namespace jambound {

constexpr double kPi = 3.14159265358979323846;

// Channel family for the experiment pipeline. The line-of-sight model
// draws user and jammer directions uniformly over a sector centered on
// broadside; the default half-angle pi/3 gives a 120-degree sector.
struct ChannelModel {
    enum class Tag { rayleigh, los_ula };
    Tag tag = Tag::rayleigh;
    double sector_half_angle = kPi / 3.0;

    void validate() const {
        if (tag == Tag::los_ula &&
            !(sector_half_angle > 0.0 && sector_half_angle <= kPi / 2.0)) {
            throw std::domain_error("ChannelModel: sector_half_angle outside (0, pi/2]");
        }
    }
};

// Steering vector of a uniform linear array with half-wavelength
// spacing: entry k is exp(-i pi cos(theta) k). Unit modulus entries,
// so the squared norm is exactly B.
inline std::vector<std::complex<double>> ula_steering(double theta, std::size_t b) {
    if (b < 1) throw std::domain_error("ula_steering: B must be >= 1");
    if (!(theta >= 0.0 && theta <= kPi)) {
        throw std::domain_error("ula_steering: theta outside [0, pi]");
    }
    std::vector<std::complex<double>> v(b);
    const double w = -kPi * std::cos(theta);
    for (std::size_t k = 0; k < b; ++k) {
        v[k] = std::complex<double>(std::cos(w * double(k)), std::sin(w * double(k)));
    }
    return v;
}

// Rayleigh-fading pair: H (B x U) and J (B x I) with i.i.d. unit
// variance circularly-symmetric complex Gaussian entries, drawn from
// disjoint sub-streams so the pair is reproducible and the two
// matrices never share randomness. I = 0 yields an empty J.
inline ChannelPair sample_rayleigh_pair(const SeededRng& rng, std::size_t b,
                                        std::size_t u, std::size_t i) {
    if (b < 1 || u < 1) {
        throw std::domain_error("sample_rayleigh_pair: need B >= 1 and U >= 1");
    }
    ChannelPair cp{sample_complex_gaussian(rng.substream(0), b, u, 1.0),
                   ComplexMatrix(b, i)};
    if (i > 0) {
        cp.J = sample_complex_gaussian(rng.substream(1), b, i, 1.0);
    }
    return cp;
}

// Line-of-sight pair: U + I directions drawn i.i.d. uniform over
// [pi/2 - a, pi/2 + a]; each column is the corresponding steering
// vector. Row norms are deterministic: |h_(b)|^2 = U, |j_(b)|^2 = I.
inline ChannelPair sample_los_pair(const SeededRng& rng, std::size_t b, std::size_t u,
                                   std::size_t i, const ChannelModel& model) {
    if (model.tag != ChannelModel::Tag::los_ula) {
        throw std::domain_error("sample_los_pair: model must be los_ula");
    }
    model.validate();
    if (b < 1 || u < 1) {
        throw std::domain_error("sample_los_pair: need B >= 1 and U >= 1");
    }
    SeededRng local = rng;
    const double lo = kPi / 2.0 - model.sector_half_angle;
    const double span = 2.0 * model.sector_half_angle;
    ChannelPair cp{ComplexMatrix(b, u), ComplexMatrix(b, i)};
    for (std::size_t c = 0; c < u + i; ++c) {
        const double theta = lo + span * local.next_double();
        const auto col = ula_steering(theta, b);
        for (std::size_t row = 0; row < b; ++row) {
            if (c < u) {
                cp.H(row, c) = col[row];
            } else {
                cp.J(row, c - u) = col[row];
            }
        }
    }
    return cp;
}

// Channel draw dispatching on the model tag.
inline ChannelPair sample_channel_pair(const SeededRng& rng, std::size_t b, std::size_t u,
                                       std::size_t i, const ChannelModel& model) {
    if (model.tag == ChannelModel::Tag::rayleigh) {
        return sample_rayleigh_pair(rng, b, u, i);
    }
    return sample_los_pair(rng, b, u, i, model);
}

}  // namespace jambound
