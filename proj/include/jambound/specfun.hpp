// SPDX-License-Identifier: Apache-2.0
// Part of jambound: mutual-information limits for coarsely quantized
// MIMO receivers under jamming.

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace jambound {

namespace detail {

// erf on |x| <= 3 through the all-positive-term series
//   erf(x) = 2x/sqrt(pi) * exp(-x^2) * sum_n (2x^2)^n / (1*3*...*(2n+1)),
// which avoids the cancellation of the alternating Maclaurin form.
inline double erf_series(double x) {
    const double x2 = x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n < 256; ++n) {
        term *= 2.0 * x2 / (2.0 * n + 1.0);
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return 1.1283791670955126 /* 2/sqrt(pi) */ * x * std::exp(-x2) * sum;
}

// erfc on x > 3 via the Legendre continued fraction
//   erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x+ (1/2)/(x+ 1/(x+ (3/2)/(x+ ...)))),
// evaluated with the modified Lentz algorithm. No 1 - erf cancellation.
inline double erfc_cf(double x) {
    const double tiny = 1e-300;
    double f = tiny;
    double c = f;
    double d = 0.0;
    for (int j = 1; j < 300; ++j) {
        const double a = (j == 1) ? 1.0 : 0.5 * (j - 1);
        d = x + a * d;
        if (d == 0.0) d = tiny;
        c = x + a / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::fabs(delta - 1.0) < 1e-17) break;
    }
    return f * std::exp(-x * x) * 0.5641895835477563 /* 1/sqrt(pi) */;
}

inline void require_not_nan(double x, const char* who) {
    if (std::isnan(x)) {
        throw std::domain_error(std::string(who) + ": argument must not be NaN");
    }
}

}  // namespace detail

// Error function, absolute error below 1e-9 over the whole real line.
// Infinite arguments return the limit values.
inline double erf(double x) {
    detail::require_not_nan(x, "erf");
    if (std::isinf(x)) return x > 0.0 ? 1.0 : -1.0;
    const double ax = std::fabs(x);
    double v;
    if (ax <= 3.0) {
        v = detail::erf_series(ax);
    } else {
        v = 1.0 - detail::erfc_cf(ax);
    }
    return x < 0.0 ? -v : v;
}

// Complementary error function; large arguments go through the continued
// fraction directly so deep-tail values keep full relative accuracy.
inline double erfc(double x) {
    detail::require_not_nan(x, "erfc");
    if (std::isinf(x)) return x > 0.0 ? 0.0 : 2.0;
    if (x > 3.0) return detail::erfc_cf(x);
    if (x < -3.0) return 2.0 - detail::erfc_cf(-x);
    return 1.0 - detail::erf_series(x);
}

// Probability value with its invariant checked once at construction.
// A slop of 1e-12 absorbs last-digit rounding from quadrature results.
class Probability {
  public:
    explicit Probability(double v) : value_(v) {
        if (!(v >= -1e-12 && v <= 1.0 + 1e-12)) {
            throw std::domain_error("Probability: value outside [0, 1]");
        }
        value_ = std::clamp(v, 0.0, 1.0);
    }
    double value() const { return value_; }

  private:
    double value_;
};

// Binary entropy in bits. The (1-p) term runs through log1p so that
// p of order 1e-4 and below (routine at 60 dB jammer power) keeps its
// relative accuracy.
inline double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("binary_entropy: p outside [0, 1]");
    }
    if (p == 0.0 || p == 1.0) return 0.0;
    const double ln2 = 0.6931471805599453;
    const double a = -p * std::log2(p);
    const double b = -(1.0 - p) * (std::log1p(-p) / ln2);
    return a + b;
}

inline double binary_entropy(const Probability& p) { return binary_entropy(p.value()); }

// Entropy of min(x, 1/2): accepts arguments above 1 (the simplified
// flip bound can exceed 1) and saturates at one bit.
inline double clipped_binary_entropy(double x) {
    if (!(x >= 0.0)) {
        throw std::domain_error("clipped_binary_entropy: x must be >= 0");
    }
    return binary_entropy(std::min(x, 0.5));
}

}  // namespace jambound
