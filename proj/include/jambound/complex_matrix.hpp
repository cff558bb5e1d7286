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

namespace jambound {

// Dense row-major complex matrix. Sized for the problems at hand
// (tens of rows), so no blocking, no views, no expression templates.
// Zero columns are allowed: a receiver facing no jammer carries an
// empty B x 0 jammer matrix through the same code paths.
class ComplexMatrix {
  public:
    using value_type = std::complex<double>;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {
        if (rows == 0) {
            throw std::invalid_argument("ComplexMatrix: rows must be >= 1");
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    value_type& operator()(std::size_t i, std::size_t j) {
        return data_[i * cols_ + j];
    }
    const value_type& operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    value_type& at(std::size_t i, std::size_t j) {
        check_index(i, j);
        return data_[i * cols_ + j];
    }
    const value_type& at(std::size_t i, std::size_t j) const {
        check_index(i, j);
        return data_[i * cols_ + j];
    }

    bool finite() const {
        for (const auto& z : data_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        }
        return true;
    }

  private:
    void check_index(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) {
            throw std::out_of_range("ComplexMatrix: index out of range");
        }
    }

    std::size_t rows_;
    std::size_t cols_;
    std::vector<value_type> data_;
};

// C = A * B
inline ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("multiply: inner dimensions disagree");
    }
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const auto aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

// Conjugate transpose.
inline ComplexMatrix adjoint(const ComplexMatrix& a) {
    if (a.cols() == 0) {
        throw std::invalid_argument("adjoint: zero-column input has zero rows");
    }
    ComplexMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            t(j, i) = std::conj(a(i, j));
        }
    }
    return t;
}

inline double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            m = std::max(m, std::abs(a(i, j)));
        }
    }
    return m;
}

}  // namespace jambound
