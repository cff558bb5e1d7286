// SPDX-License-Identifier: Apache-2.0
// Part of jambound: mutual-information limits for coarsely quantized
// MIMO receivers under jamming.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "complex_matrix.hpp"
#include "linalg.hpp"
#include "specfun.hpp"

namespace jambound {

// 10^(x/10)
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

// System dimensions and powers. rho and n0 are linear (the CLI layer
// converts from dB). M is the number of output levels of every scalar
// quantizer, per real dimension.
struct SystemConfig {
    int B = 1;            // receive antennas
    int U = 1;            // single-antenna users
    int I = 0;            // jammer antennas
    double rho = 0.0;     // jammer transmit power
    double n0 = 1.0;      // noise power
    std::int64_t M = 2;   // quantization levels

    void validate() const {
        if (B < 1 || U < 1 || I < 0) {
            throw std::domain_error("SystemConfig: need B >= 1, U >= 1, I >= 0");
        }
        if (!(rho >= 0.0) || !(n0 > 0.0)) {
            throw std::domain_error("SystemConfig: need rho >= 0 and n0 > 0");
        }
        if (M < 2) {
            throw std::domain_error("SystemConfig: need M >= 2");
        }
    }
};

// User and jammer channel matrices with a common antenna count.
struct ChannelPair {
    ComplexMatrix H;  // B x U
    ComplexMatrix J;  // B x I (I may be 0)

    void validate() const {
        if (H.rows() != J.rows()) {
            throw std::invalid_argument("ChannelPair: H and J row counts disagree");
        }
    }
};

// Which per-ADC SINR bound to use: the general input-distribution-free
// one, or the tightened version valid for Gaussian inputs (half of the
// general value).
enum class SinrVariant { general, gaussian_input };

// Which per-ADC flip bound feeds the information bound: the exact
// closed form, or its looser simplified envelope.
enum class FVariant { exact, simplified };

struct BoundResult {
    std::vector<double> per_adc_sinr;  // 2B entries, component c = 2b + {0,1}
    std::vector<double> per_adc_iota;  // 2B entries, bits
    double sum_term = 0.0;             // sum of per_adc_iota, bits
    double capacity_term = 0.0;        // unquantized jammer-free capacity, bits
    double value = 0.0;                // min of the two, bits
};

namespace detail {

inline void check_fbar_args(std::int64_t m, double sinr) {
    if (m < 2) throw std::domain_error("f_bar: M must be >= 2");
    if (!(sinr >= 0.0) || !std::isfinite(sinr)) {
        throw std::domain_error("f_bar: sinr must be finite and >= 0");
    }
}

}  // namespace detail

// Worst-case probability that the useful signal moves a quantizer
// output, as a function of resolution M and the per-ADC SINR:
//   erf(t/sqrt(2)) + sqrt(2/pi) t exp(-t^2/2) - t^2 erfc(t/sqrt(2)),
// with t = (M-1) sqrt(sinr). Lies in [0, 1]; the final clamp only
// absorbs last-digit rounding.
inline double f_bar(std::int64_t m, double sinr) {
    detail::check_fbar_args(m, sinr);
    const double t = double(m - 1) * std::sqrt(sinr);
    const double a = erf(t * 0.7071067811865476);
    const double b = 0.7978845608028654 /* sqrt(2/pi) */ * t * std::exp(-0.5 * t * t);
    const double c = t * t * erfc(t * 0.7071067811865476);
    return std::clamp(a + b - c, 0.0, 1.0);
}

// Looser envelope sqrt(8/pi) (M-1) sqrt(sinr); may exceed 1.
inline double f_bar_simplified(std::int64_t m, double sinr) {
    detail::check_fbar_args(m, sinr);
    return 1.5957691216057308 /* sqrt(8/pi) */ * double(m - 1) * std::sqrt(sinr);
}

// Per-ADC conditional mutual-information bound in bits:
//   min{ log2 M, H_b(min(f, 1/2)) + f log2(M-1) }
// with f from the chosen flip-probability bound. For M = 2 the second
// summand is identically 0 and is never formed, so there is no 0 * inf
// hazard from the log2(M-1) factor.
inline double iota_bar(std::int64_t m, double sinr, FVariant variant = FVariant::exact) {
    const double f = (variant == FVariant::exact) ? f_bar(m, sinr)
                                                  : f_bar_simplified(m, sinr);
    double v = clipped_binary_entropy(f);
    if (m > 2) {
        v += f * std::log2(double(m - 1));
    }
    return std::min(v, std::log2(double(m)));
}

// Per-antenna SINR bound feeding every quantizer of antenna b (both
// real components of one antenna see the same value):
//   general:        2 |h_(b)|^2 / (rho |j_(b)|^2 + n0)
//   gaussian_input:   |h_(b)|^2 / (rho |j_(b)|^2 + n0)
inline double sinr_upper_bound(const ChannelPair& cp, double rho, double n0,
                               std::size_t b, SinrVariant variant) {
    cp.validate();
    if (!(rho >= 0.0) || !(n0 > 0.0)) {
        throw std::domain_error("sinr_upper_bound: need rho >= 0 and n0 > 0");
    }
    if (b >= cp.H.rows()) {
        throw std::out_of_range("sinr_upper_bound: antenna index out of range");
    }
    const double h2 = row_norm_sq(cp.H, b);
    const double j2 = (cp.J.cols() == 0) ? 0.0 : row_norm_sq(cp.J, b);
    const double numer = (variant == SinrVariant::general) ? 2.0 * h2 : h2;
    return numer / (rho * j2 + n0);
}

// Unquantized jammer-free capacity log2 det(I + (1/n0) H H^H) in bits.
// Evaluated through the smaller Gram form when U < B; agreement of the
// two forms is a test elsewhere, not an assumption here.
inline double jammer_free_mi(const ComplexMatrix& h, double n0) {
    if (h.cols() == 0) return 0.0;
    if (h.cols() < h.rows()) {
        return hermitian_logdet_capacity(adjoint(h), n0);
    }
    return hermitian_logdet_capacity(h, n0);
}

// The system-level mutual-information upper bound: the smaller of the
// summed per-ADC bounds and the unquantized jammer-free capacity.
inline BoundResult mutual_info_upper_bound(const SystemConfig& sys, const ChannelPair& cp,
                                           SinrVariant variant = SinrVariant::general,
                                           FVariant f_variant = FVariant::exact) {
    sys.validate();
    cp.validate();
    if (cp.H.rows() != std::size_t(sys.B) || cp.H.cols() != std::size_t(sys.U) ||
        cp.J.cols() != std::size_t(sys.I)) {
        throw std::invalid_argument("mutual_info_upper_bound: dimensions disagree with config");
    }
    BoundResult res;
    res.per_adc_sinr.reserve(2 * sys.B);
    res.per_adc_iota.reserve(2 * sys.B);
    for (int b = 0; b < sys.B; ++b) {
        const double s = sinr_upper_bound(cp, sys.rho, sys.n0, std::size_t(b), variant);
        const double iota = iota_bar(sys.M, s, f_variant);
        for (int comp = 0; comp < 2; ++comp) {
            res.per_adc_sinr.push_back(s);
            res.per_adc_iota.push_back(iota);
            res.sum_term += iota;
        }
    }
    res.capacity_term = jammer_free_mi(cp.H, sys.n0);
    res.value = std::min(res.sum_term, res.capacity_term);
    return res;
}

// Mutual information still guaranteed after projecting the receive
// signal onto the orthogonal complement of the jammer subspace:
//   log2 det(I + (1/n0) (U^H H)(U^H H)^H).
// The jammer power rho is deliberately not an input: nulling removes
// the jammer entirely, whatever its power.
inline double unquantized_lower_bound(const ChannelPair& cp, double n0) {
    cp.validate();
    const ComplexMatrix u = orthonormal_complement(cp.J);
    const ComplexMatrix h_tilde = multiply(adjoint(u), cp.H);
    return jammer_free_mi(h_tilde, n0);
}

}  // namespace jambound
