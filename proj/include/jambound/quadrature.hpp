// SPDX-License-Identifier: Apache-2.0
// Part of jambound: mutual-information limits for coarsely quantized
// MIMO receivers under jamming.

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace jambound {

// Composite midpoint rule with panel doubling plus one Richardson step
// (error falls like h^4), stopping when two successive extrapolated
// estimates agree to rel_tol. The open rule never samples a or b, so
// integrands that are only piecewise-defined may take the neighboring
// piece's value exactly at a cut without poisoning the estimate; the
// closed trapezoid rule stalls on those. Meant for smooth, bounded,
// Gaussian-weighted integrands on a finite interval; callers split at
// known kinks or discontinuities before integrating.
template <typename F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-7,
                 int max_doublings = 22) {
    if (!(b >= a)) throw std::invalid_argument("integrate: need b >= a");
    if (a == b) return 0.0;
    const double h = b - a;
    double mid = h * f(a + 0.5 * h);
    double prev_rich = mid;
    long n = 1;  // panels
    for (int level = 0; level < max_doublings; ++level) {
        n *= 2;
        const double step = h / double(n);
        double sum = 0.0;
        for (long i = 0; i < n; ++i) {
            sum += f(a + (double(i) + 0.5) * step);
        }
        const double next_mid = step * sum;
        const double rich = (4.0 * next_mid - mid) / 3.0;
        const double scale = std::max({std::fabs(rich), std::fabs(prev_rich), 1e-300});
        if (level >= 3 && std::fabs(rich - prev_rich) <= rel_tol * scale + 1e-16) {
            return rich;
        }
        mid = next_mid;
        prev_rich = rich;
    }
    throw std::runtime_error("integrate: no convergence within the doubling budget");
}

// Integral over [a, b] split at the given interior points (unsorted,
// possibly outside [a, b]; both handled). Each piece converges on its
// own, which is what makes integrands with cell-boundary kinks cheap.
template <typename F>
double integrate_piecewise(F&& f, double a, double b, const std::vector<double>& interior,
                           double rel_tol = 1e-7, int max_doublings = 22) {
    std::vector<double> cuts;
    cuts.reserve(interior.size() + 2);
    cuts.push_back(a);
    for (double x : interior) {
        if (x > a && x < b) cuts.push_back(x);
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        if (cuts[k + 1] > cuts[k]) {
            total += integrate(f, cuts[k], cuts[k + 1], rel_tol, max_doublings);
        }
    }
    return total;
}

}  // namespace jambound
