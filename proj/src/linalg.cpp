#include "volterra/linalg.hpp"

#include <string>
#include <utility>

#include "volterra/errors.hpp"

namespace volterra {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, const PrecisionContext& ctx)
    : rows_(rows), cols_(cols), entries_(rows * cols, Real::zero(ctx)) {
    if (rows == 0 || cols == 0) {
        throw ShapeError("matrix dimensions must be positive, got " + std::to_string(rows) +
                         "x" + std::to_string(cols));
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n, const PrecisionContext& ctx) {
    DenseMatrix m(n, n, ctx);
    const Real one(1L, ctx);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = one;
    return m;
}

std::vector<Real> multiply(const DenseMatrix& A, const std::vector<Real>& x) {
    if (x.size() != A.cols()) {
        throw ShapeError("cannot multiply a " + std::to_string(A.rows()) + "x" +
                         std::to_string(A.cols()) + " matrix by a vector of length " +
                         std::to_string(x.size()));
    }
    std::vector<Real> y;
    y.reserve(A.rows());
    for (std::size_t i = 0; i < A.rows(); ++i) {
        Real acc = Real::zero(A.at(i, 0).context());
        for (std::size_t j = 0; j < A.cols(); ++j) {
            acc += A.at(i, j) * x[j];
        }
        y.push_back(std::move(acc));
    }
    return y;
}

std::vector<Real> solve_linear(const DenseMatrix& A, const std::vector<Real>& rhs) {
    if (A.rows() != A.cols()) {
        throw ShapeError("solve_linear needs a square matrix, got " + std::to_string(A.rows()) +
                         "x" + std::to_string(A.cols()));
    }
    if (rhs.size() != A.rows()) {
        throw ShapeError("right-hand side length " + std::to_string(rhs.size()) +
                         " does not match a " + std::to_string(A.rows()) + "x" +
                         std::to_string(A.cols()) + " matrix");
    }
    const std::size_t n = A.rows();
    const PrecisionContext ambient = A.at(0, 0).context();
    const PrecisionContext work = ambient.with_guard_digits();

    // Working copies at guard precision; elimination happens here and the
    // solution is rounded back at the end.
    std::vector<std::vector<Real>> m;
    m.reserve(n);
    Real norm = Real::zero(work);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Real> row;
        row.reserve(n + 1);
        for (std::size_t j = 0; j < n; ++j) {
            row.push_back(A.at(i, j).to_context(work));
            Real mag = abs(row.back());
            if (mag > norm) norm = mag;
        }
        row.push_back(rhs[i].to_context(work));
        m.push_back(std::move(row));
    }

    const Real pivot_floor =
        Real::pow10(-ambient.decimal_digits() + 5, work) * norm;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        Real best = abs(m[col][col]);
        for (std::size_t i = col + 1; i < n; ++i) {
            Real mag = abs(m[i][col]);
            if (mag > best) {
                best = std::move(mag);
                pivot = i;
            }
        }
        if (best <= pivot_floor || best.is_zero()) {
            throw SingularMatrixError("pivot " + best.to_decimal() + " in column " +
                                      std::to_string(col) + " is below the floor " +
                                      pivot_floor.to_decimal());
        }
        if (pivot != col) std::swap(m[pivot], m[col]);

        for (std::size_t i = col + 1; i < n; ++i) {
            if (m[i][col].is_zero()) continue;
            Real factor = m[i][col] / m[col][col];
            for (std::size_t j = col; j <= n; ++j) {
                m[i][j] -= factor * m[col][j];
            }
        }
    }

    std::vector<Real> x(n, Real::zero(work));
    for (std::size_t i = n; i-- > 0;) {
        Real acc = m[i][n];
        for (std::size_t j = i + 1; j < n; ++j) {
            acc -= m[i][j] * x[j];
        }
        x[i] = acc / m[i][i];
    }

    std::vector<Real> out;
    out.reserve(n);
    for (const Real& xi : x) out.push_back(xi.to_context(ambient));
    return out;
}

}  // namespace volterra
