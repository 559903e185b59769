#pragma once

#include <cstddef>
#include <vector>

namespace landscape {

/// Dense row-major real matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<double>& data() const noexcept { return data_; }

    Matrix transposed() const;
    double frobenius_norm() const;
    /// max |a_ij - a_ji|
    double symmetry_residual() const;
    /// (A + A^T) / 2
    Matrix symmetrized() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

std::vector<double> multiply(const Matrix& a, const std::vector<double>& x);

struct SymmetricEigen {
    /// Ascending.
    std::vector<double> values;
    /// vectors[k] is the unit eigenvector belonging to values[k].
    std::vector<std::vector<double>> vectors;
    int sweeps = 0;
};

/// Cyclic Jacobi rotations on a symmetric matrix.
///
/// Converges when the off-diagonal Frobenius norm drops below
/// `rel_tol * ||A||_F`; throws NumericalError after `max_sweeps`.
SymmetricEigen jacobi_eigen(const Matrix& a, double rel_tol = 1e-12, int max_sweeps = 100);

} // namespace landscape
