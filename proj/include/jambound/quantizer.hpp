// SPDX-License-Identifier: Apache-2.0
// Part of jambound: mutual-information limits for coarsely quantized
// MIMO receivers under jamming.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace jambound {

// Scalar M-level quantizer described by its M-1 strictly increasing
// cell boundaries. Cells are half-open: a value equal to a boundary
// belongs to the upper cell. That tie-break is a measure-zero choice,
// fixed only so results are bit-for-bit deterministic.
struct ScalarQuantizer {
    std::int64_t levels;
    std::vector<double> boundaries;

    ScalarQuantizer(std::int64_t m, std::vector<double> gamma)
        : levels(m), boundaries(std::move(gamma)) {
        if (levels < 2) throw std::domain_error("ScalarQuantizer: M must be >= 2");
        if (boundaries.size() != std::size_t(levels - 1)) {
            throw std::invalid_argument("ScalarQuantizer: need exactly M-1 boundaries");
        }
        for (std::size_t k = 0; k + 1 < boundaries.size(); ++k) {
            if (!(boundaries[k] < boundaries[k + 1])) {
                throw std::invalid_argument("ScalarQuantizer: boundaries must strictly increase");
            }
        }
        for (double g : boundaries) {
            if (!std::isfinite(g)) {
                throw std::invalid_argument("ScalarQuantizer: boundaries must be finite");
            }
        }
    }
};

// Level index in [0, M-1] of x: the number of boundaries at or below x.
inline std::int64_t quantize(const ScalarQuantizer& q, double x) {
    if (!std::isfinite(x)) throw std::domain_error("quantize: x must be finite");
    return std::upper_bound(q.boundaries.begin(), q.boundaries.end(), x) -
           q.boundaries.begin();
}

// Distance from x to the nearest cell boundary.
inline double boundary_distance(const ScalarQuantizer& q, double x) {
    if (!std::isfinite(x)) throw std::domain_error("boundary_distance: x must be finite");
    const auto it = std::lower_bound(q.boundaries.begin(), q.boundaries.end(), x);
    double best = std::numeric_limits<double>::infinity();
    if (it != q.boundaries.end()) best = std::min(best, *it - x);
    if (it != q.boundaries.begin()) best = std::min(best, x - *(it - 1));
    return best;
}

// Symmetric uniform quantizer: M-1 boundaries evenly spaced with the
// given step, centered so that the middle of the grid sits at 0 (for
// M = 2 the single boundary is exactly 0).
inline ScalarQuantizer uniform_quantizer(std::int64_t m, double step) {
    if (m < 2) throw std::domain_error("uniform_quantizer: M must be >= 2");
    if (!(step > 0.0)) throw std::domain_error("uniform_quantizer: step must be > 0");
    std::vector<double> gamma(std::size_t(m - 1));
    const double mid = 0.5 * double(m - 2);
    for (std::size_t k = 0; k < gamma.size(); ++k) {
        gamma[k] = (double(k) - mid) * step;
    }
    return ScalarQuantizer(m, std::move(gamma));
}

}  // namespace jambound
