#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tracemax {

// Small dense row-major matrix of doubles. Sized for factor matrices and
// Gram matrices (n is the tensor dimension, typically <= a few dozen), so
// everything here is plain loops with no blocking.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0.0) {}

    static Matrix identity(int n)
    {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    std::span<double> data() { return a_; }
    std::span<const double> data() const { return a_; }

    double* row_ptr(int i) { return a_.data() + static_cast<std::size_t>(i) * cols_; }
    const double* row_ptr(int i) const { return a_.data() + static_cast<std::size_t>(i) * cols_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> a_;
};

Matrix transpose(const Matrix& m);
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);

double frobenius_norm(const Matrix& m);
double max_abs(const Matrix& m);

// ||M^T M - I||_F, the orthogonality defect.
double orthogonality_error(const Matrix& u);

} // namespace tracemax
