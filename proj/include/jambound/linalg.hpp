// SPDX-License-Identifier: Apache-2.0
// Part of jambound: mutual-information limits for coarsely quantized
// MIMO receivers under jamming.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "complex_matrix.hpp"
#include "philox.hpp"

namespace jambound {

// log2 det(I + (1/n0) G G^H) for G of shape rows x cols, computed in
// the log domain through a Cholesky factorization of the (Hermitian,
// positive definite) capacity matrix. Result is in bits and >= 0.
inline double hermitian_logdet_capacity(const ComplexMatrix& g, double n0) {
    if (!(n0 > 0.0)) {
        throw std::domain_error("hermitian_logdet_capacity: n0 must be > 0");
    }
    if (!g.finite()) {
        throw std::domain_error("hermitian_logdet_capacity: non-finite entries");
    }
    const std::size_t n = g.rows();
    // S = I + (1/n0) G G^H
    ComplexMatrix s = ComplexMatrix::identity(n);
    const double inv_n0 = 1.0 / n0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            std::complex<double> acc = 0.0;
            for (std::size_t k = 0; k < g.cols(); ++k) {
                acc += g(i, k) * std::conj(g(j, k));
            }
            s(i, j) += inv_n0 * acc;
            if (i != j) s(j, i) = std::conj(s(i, j));
        }
    }
    // In-place lower Cholesky; log-determinant accumulates off the
    // pivots, so huge gains (n0 ~ 1e-12) never overflow a product.
    double log2det = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> pivot = s(k, k);
        for (std::size_t m = 0; m < k; ++m) {
            pivot -= s(k, m) * std::conj(s(k, m));
        }
        const double piv = pivot.real();
        if (!(piv > 0.0) || !std::isfinite(piv)) {
            throw std::runtime_error(
                "hermitian_logdet_capacity: factorization lost positive definiteness");
        }
        const double l = std::sqrt(piv);
        log2det += 2.0 * std::log2(l);
        s(k, k) = l;
        for (std::size_t i = k + 1; i < n; ++i) {
            std::complex<double> acc = s(i, k);
            for (std::size_t m = 0; m < k; ++m) {
                acc -= s(i, m) * std::conj(s(k, m));
            }
            s(i, k) = acc / l;
        }
    }
    return log2det;
}

// Orthonormal basis of the orthogonal complement of col(J), one column
// per complement dimension: returns U of shape B x (B - r), r the
// numerical rank of J, with U^H J ~ 0 and U^H U = I. Implemented as a
// Householder QR factorization of J with column pivoting; the trailing
// B - r columns of the accumulated Q span the complement. The rank
// threshold is 1e-12 relative to the largest pivot: channel matrices
// are generically full rank, the guard only catches degenerate inputs.
inline ComplexMatrix orthonormal_complement(const ComplexMatrix& j) {
    if (!j.finite()) {
        throw std::domain_error("orthonormal_complement: non-finite entries");
    }
    const std::size_t b = j.rows();
    const std::size_t cols = j.cols();
    ComplexMatrix r = j;
    std::vector<std::vector<std::complex<double>>> reflectors;

    const std::size_t steps = std::min(b, cols);
    double first_pivot = 0.0;
    std::size_t rank = 0;
    for (std::size_t k = 0; k < steps; ++k) {
        // Pivot: bring the remaining column of largest norm to front.
        std::size_t best = k;
        double best_norm = -1.0;
        for (std::size_t c = k; c < cols; ++c) {
            double nrm = 0.0;
            for (std::size_t i = k; i < b; ++i) nrm += std::norm(r(i, c));
            if (nrm > best_norm) {
                best_norm = nrm;
                best = c;
            }
        }
        if (best != k) {
            for (std::size_t i = 0; i < b; ++i) std::swap(r(i, k), r(i, best));
        }
        const double alpha = std::sqrt(std::max(best_norm, 0.0));
        if (k == 0) first_pivot = alpha;
        if (alpha <= 1e-12 * first_pivot) {
            break;  // remaining block is numerically zero
        }
        ++rank;

        // Householder vector v sending the column to alpha * e_k with a
        // phase choice that avoids cancellation.
        std::vector<std::complex<double>> v(b, 0.0);
        for (std::size_t i = k; i < b; ++i) v[i] = r(i, k);
        const std::complex<double> x0 = v[k];
        const double ax0 = std::abs(x0);
        const std::complex<double> phase = (ax0 > 0.0) ? x0 / ax0 : 1.0;
        v[k] += phase * alpha;
        double vnorm_sq = 0.0;
        for (std::size_t i = k; i < b; ++i) vnorm_sq += std::norm(v[i]);
        if (vnorm_sq == 0.0) continue;

        // Apply I - 2 v v^H / |v|^2 to the remaining columns.
        for (std::size_t c = k; c < cols; ++c) {
            std::complex<double> dot = 0.0;
            for (std::size_t i = k; i < b; ++i) dot += std::conj(v[i]) * r(i, c);
            const std::complex<double> scale = 2.0 * dot / vnorm_sq;
            for (std::size_t i = k; i < b; ++i) r(i, c) -= scale * v[i];
        }
        reflectors.push_back(std::move(v));
    }

    if (rank >= b) {
        throw std::invalid_argument(
            "orthonormal_complement: columns span the whole space, no complement");
    }

    // Build Q by applying the reflectors to the identity (in reverse),
    // then keep the trailing B - rank columns.
    ComplexMatrix q = ComplexMatrix::identity(b);
    for (std::size_t t = reflectors.size(); t-- > 0;) {
        const auto& v = reflectors[t];
        double vnorm_sq = 0.0;
        for (std::size_t i = 0; i < b; ++i) vnorm_sq += std::norm(v[i]);
        for (std::size_t c = 0; c < b; ++c) {
            std::complex<double> dot = 0.0;
            for (std::size_t i = 0; i < b; ++i) dot += std::conj(v[i]) * q(i, c);
            const std::complex<double> scale = 2.0 * dot / vnorm_sq;
            for (std::size_t i = 0; i < b; ++i) q(i, c) -= scale * v[i];
        }
    }
    ComplexMatrix u(b, b - rank);
    for (std::size_t i = 0; i < b; ++i) {
        for (std::size_t c = rank; c < b; ++c) {
            u(i, c - rank) = q(i, c);
        }
    }
    return u;
}

// Matrix of i.i.d. circularly-symmetric complex Gaussian entries with
// per-entry variance `variance`. Entries are drawn row-major from a
// private copy of rng, so two calls with the same generator state
// produce bit-identical matrices.
inline ComplexMatrix sample_complex_gaussian(const SeededRng& rng, std::size_t rows,
                                             std::size_t cols, double variance) {
    if (!(variance > 0.0)) {
        throw std::domain_error("sample_complex_gaussian: variance must be > 0");
    }
    ComplexMatrix m(rows, cols);
    SeededRng local = rng;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            m(i, j) = local.next_complex_gaussian(variance);
        }
    }
    return m;
}

// Squared Euclidean norm of row b (0-based).
inline double row_norm_sq(const ComplexMatrix& a, std::size_t b) {
    if (b >= a.rows()) {
        throw std::out_of_range("row_norm_sq: row index out of range");
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += std::norm(a(b, j));
    return acc;
}

}  // namespace jambound
