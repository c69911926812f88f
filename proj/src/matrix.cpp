#include "tracemax/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace tracemax {

Matrix transpose(const Matrix& m)
{
    Matrix t(m.cols(), m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return t;
}

Matrix matmul(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimension mismatch");
    Matrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix difference: shape mismatch");
    Matrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

double frobenius_norm(const Matrix& m)
{
    double acc = 0.0;
    for (double v : m.data()) acc += v * v;
    return std::sqrt(acc);
}

double max_abs(const Matrix& m)
{
    double mx = 0.0;
    for (double v : m.data()) mx = std::max(mx, std::abs(v));
    return mx;
}

double orthogonality_error(const Matrix& u)
{
    const int n = u.rows();
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double dot = 0.0;
            for (int k = 0; k < n; ++k) dot += u(k, i) * u(k, j);
            const double r = dot - (i == j ? 1.0 : 0.0);
            acc += r * r;
        }
    }
    return std::sqrt(acc);
}

} // namespace tracemax
