#include "tracemax/gradients.hpp"

#include <cmath>
#include <stdexcept>

#include "tracemax/linalg.hpp"

namespace tracemax {

Matrix grad_tilde_mode(const DenseTensor& a, const std::vector<Matrix>& factors, int mode)
{
    const int d = a.order();
    const int n = a.dim();
    if (static_cast<int>(factors.size()) != d) throw std::invalid_argument("grad_tilde_mode: need one factor per mode");
    if (mode < 0 || mode >= d) throw std::invalid_argument("grad_tilde_mode: invalid mode");
    for (const Matrix& u : factors)
        if (u.rows() != n || u.cols() != n) throw std::invalid_argument("grad_tilde_mode: factors must be n x n");
    DenseTensor y = a;
    for (int m = 0; m < d; ++m) {
        if (m == mode) continue;
        y = mode_product(y, transpose(factors[m]), m);
    }
    return diagonal_fiber_matrix(y, mode);
}

Matrix lambda_of(const Matrix& u, const Matrix& g)
{
    const Matrix m = matmul(transpose(u), g);
    const int n = m.rows();
    Matrix lam(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double v = 0.5 * (m(i, j) - m(j, i));
            lam(i, j) = v;
            lam(j, i) = -v;
        }
    }
    return lam;
}

Matrix lambda_fast(const DenseTensor& w, int mode)
{
    const Matrix d = diagonal_fiber_matrix(w, mode);
    const int n = d.rows();
    Matrix lam(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double v = 0.5 * (d(i, j) - d(j, i));
            lam(i, j) = v;
            lam(j, i) = -v;
        }
    }
    return lam;
}

namespace {

double int_pow(double x, int e)
{
    double r = 1.0;
    for (int k = 0; k < e; ++k) r *= x;
    return r;
}

double binomial(int n, int k)
{
    double r = 1.0;
    for (int t = 1; t <= k; ++t) r = r * (n - k + t) / t;
    return r;
}

} // namespace

Matrix grad_tilde_sym(const DenseTensor& a, const Matrix& u)
{
    const int d = a.order();
    const int n = a.dim();
    if (u.rows() != n || u.cols() != n) throw std::invalid_argument("grad_tilde_sym: U must be n x n");
    if (!is_symmetric(a, 1e-10)) throw std::invalid_argument("grad_tilde_sym: input tensor is not symmetric");

    Matrix g(n, n);
    std::vector<int> idx(d);
    for (int m = 0; m < n; ++m) {
        for (int r = 0; r < n; ++r) {
            double total = 0.0;
            for (int k = 1; k <= d; ++k) {
                // T_k: contract trailing d-k modes over indices != m
                const int rest = d - k;
                for (int t = 0; t < k; ++t) idx[t] = m;
                double tk = 0.0;
                std::vector<int> tail(rest, 0);
                bool done = false;
                while (!done) {
                    bool skip = false;
                    double prod = 1.0;
                    for (int t = 0; t < rest; ++t) {
                        if (tail[t] == m) {
                            skip = true;
                            break;
                        }
                        prod *= u(tail[t], r);
                        idx[k + t] = tail[t];
                    }
                    if (!skip) tk += a[a.flat_index(idx)] * prod;
                    // odometer
                    int pos = 0;
                    while (pos < rest) {
                        if (++tail[pos] < n) break;
                        tail[pos] = 0;
                        ++pos;
                    }
                    if (pos == rest) done = true;
                    if (rest == 0) done = true;
                }
                total += binomial(d, k) * k * int_pow(u(m, r), k - 1) * tk;
            }
            g(m, r) = total;
        }
    }
    return g;
}

Matrix lambda_fast_sym(const DenseTensor& w)
{
    const int d = w.order();
    Matrix lam = lambda_fast(w, 0);
    for (double& v : lam.data()) v *= d;
    return lam;
}

double stationarity_floor(int n)
{
    return 1e-13 * n;
}

bool pivot_admissible_given_norm(double lambda_ij, double lambda_norm, int n, double eta)
{
    if (!(eta > 0.0) || eta > 2.0 / n) throw std::invalid_argument("pivot gate: eta must be in (0, 2/n]");
    if (lambda_norm <= stationarity_floor(n)) return true;
    return 2.0 * std::abs(lambda_ij) >= eta * lambda_norm;
}

bool pivot_admissible(const Matrix& lambda, int i, int j, double eta)
{
    return pivot_admissible_given_norm(lambda(i, j), spectral_norm(lambda), lambda.rows(), eta);
}

} // namespace tracemax
