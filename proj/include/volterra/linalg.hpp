#pragma once

#include <cstddef>
#include <vector>

#include "volterra/precision.hpp"

namespace volterra {

/// Dense row-major matrix of arbitrary-precision entries.
class DenseMatrix {
public:
    DenseMatrix(std::size_t rows, std::size_t cols, const PrecisionContext& ctx);

    static DenseMatrix identity(std::size_t n, const PrecisionContext& ctx);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Real& at(std::size_t i, std::size_t j) { return entries_.at(i * cols_ + j); }
    const Real& at(std::size_t i, std::size_t j) const { return entries_.at(i * cols_ + j); }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Real> entries_;
};

/// A * x for a vector x of length cols().
std::vector<Real> multiply(const DenseMatrix& A, const std::vector<Real>& x);

/// Solves A x = rhs by Gaussian elimination with partial pivoting, carried
/// out with guard digits above the entries' precision. Pivots smaller than
/// 10^(-digits+5) * max|A| raise SingularMatrixError.
std::vector<Real> solve_linear(const DenseMatrix& A, const std::vector<Real>& rhs);

}  // namespace volterra
