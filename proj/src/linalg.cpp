#include "tracemax/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tracemax {

std::optional<RotationCoeffs> rotation_from_trace_pair(double d_sum, double n_diff)
{
    const double r = std::hypot(d_sum, n_diff);
    if (r == 0.0) return std::nullopt;
    return RotationCoeffs{d_sum / r, n_diff / r};
}

void apply_rotation_left(Matrix& m, const PlaneRotation& rot)
{
    double* ri = m.row_ptr(rot.i);
    double* rj = m.row_ptr(rot.j);
    const double c = rot.c, s = rot.s;
    for (int k = 0; k < m.cols(); ++k) {
        const double a = ri[k];
        const double b = rj[k];
        ri[k] = c * a + s * b;
        rj[k] = -s * a + c * b;
    }
}

void post_multiply_rotation(Matrix& u, const PlaneRotation& rot)
{
    const double c = rot.c, s = rot.s;
    for (int k = 0; k < u.rows(); ++k) {
        const double a = u(k, rot.i);
        const double b = u(k, rot.j);
        u(k, rot.i) = c * a + s * b;
        u(k, rot.j) = -s * a + c * b;
    }
}

QrResult householder_qr(const Matrix& m)
{
    if (m.rows() != m.cols()) throw std::invalid_argument("householder_qr: square input required");
    const int n = m.rows();
    Matrix r = m;
    Matrix q = Matrix::identity(n);
    std::vector<double> v(n);
    for (int k = 0; k < n - 1; ++k) {
        double norm2 = 0.0;
        for (int i = k; i < n; ++i) norm2 += r(i, k) * r(i, k);
        const double norm = std::sqrt(norm2);
        if (norm == 0.0) continue;
        const double alpha = r(k, k) >= 0.0 ? -norm : norm;
        for (int i = k; i < n; ++i) v[i] = r(i, k);
        v[k] -= alpha;
        double vtv = 0.0;
        for (int i = k; i < n; ++i) vtv += v[i] * v[i];
        if (vtv == 0.0) continue;
        const double beta = 2.0 / vtv;
        // R <- (I - beta v v^T) R
        for (int j = k; j < n; ++j) {
            double dot = 0.0;
            for (int i = k; i < n; ++i) dot += v[i] * r(i, j);
            const double f = beta * dot;
            for (int i = k; i < n; ++i) r(i, j) -= f * v[i];
        }
        // Q <- Q (I - beta v v^T)
        for (int i = 0; i < n; ++i) {
            double dot = 0.0;
            for (int j = k; j < n; ++j) dot += q(i, j) * v[j];
            const double f = beta * dot;
            for (int j = k; j < n; ++j) q(i, j) -= f * v[j];
        }
        for (int i = k + 1; i < n; ++i) r(i, k) = 0.0;
    }
    for (int k = 0; k < n; ++k) {
        if (r(k, k) < 0.0) {
            for (int j = k; j < n; ++j) r(k, j) = -r(k, j);
            for (int i = 0; i < n; ++i) q(i, k) = -q(i, k);
        }
    }
    return {std::move(q), std::move(r)};
}

namespace {

double off_diag_norm(const Matrix& a)
{
    double acc = 0.0;
    for (int p = 0; p < a.rows(); ++p)
        for (int q = p + 1; q < a.cols(); ++q) acc += a(p, q) * a(p, q);
    return std::sqrt(2.0 * acc);
}

void check_symmetric_input(const Matrix& s)
{
    if (s.rows() != s.cols()) throw std::invalid_argument("sym_eigen: square input required");
    double asym = 0.0;
    for (int i = 0; i < s.rows(); ++i)
        for (int j = 0; j < s.cols(); ++j) {
            const double r = s(i, j) - s(j, i);
            asym += r * r;
        }
    const double nrm = frobenius_norm(s);
    if (std::sqrt(asym) > 1e-12 * std::max(nrm, 1e-300) && nrm > 0.0)
        throw std::invalid_argument("sym_eigen: input is not symmetric");
}

// Cyclic Jacobi on a copy of s; fills eigenvalues (unsorted, on the diagonal)
// and optionally accumulates the rotations into *v.
void jacobi_sweeps(Matrix a, std::vector<double>& values, Matrix* v)
{
    const int n = a.rows();
    if (v) *v = Matrix::identity(n);
    const double total = frobenius_norm(a);
    const double stop = 1e-13 * std::max(total, 1e-300);
    for (int sweep = 0; sweep < 50 && off_diag_norm(a) > stop; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= 1e-300) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e12) {
                    t = 1.0 / (2.0 * theta);
                } else {
                    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double app = a(p, p), aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = a(p, k) = c * akp - s * akq;
                    a(k, q) = a(q, k) = s * akp + c * akq;
                }
                if (v) {
                    for (int k = 0; k < n; ++k) {
                        const double vkp = (*v)(k, p), vkq = (*v)(k, q);
                        (*v)(k, p) = c * vkp - s * vkq;
                        (*v)(k, q) = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
    values.resize(n);
    for (int i = 0; i < n; ++i) values[i] = a(i, i);
}

} // namespace

SymEigenResult sym_eigen(const Matrix& s)
{
    check_symmetric_input(s);
    const int n = s.rows();
    std::vector<double> vals;
    Matrix v;
    jacobi_sweeps(s, vals, &v);

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] > vals[b]; });

    SymEigenResult res;
    res.values.resize(n);
    res.vectors = Matrix(n, n);
    for (int k = 0; k < n; ++k) {
        const int src = order[k];
        res.values[k] = vals[src];
        int peak = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(v(i, src)) > std::abs(v(peak, src))) peak = i;
        const double sign = v(peak, src) < 0.0 ? -1.0 : 1.0;
        for (int i = 0; i < n; ++i) res.vectors(i, k) = sign * v(i, src);
    }
    return res;
}

std::vector<double> sym_eigen_values(const Matrix& s)
{
    check_symmetric_input(s);
    std::vector<double> vals;
    jacobi_sweeps(s, vals, nullptr);
    std::sort(vals.begin(), vals.end(), std::greater<>());
    return vals;
}

double spectral_norm(const Matrix& m)
{
    const int n = m.rows();
    Matrix g(m.cols(), m.cols());
    for (int i = 0; i < m.cols(); ++i) {
        for (int j = i; j < m.cols(); ++j) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) acc += m(k, i) * m(k, j);
            g(i, j) = g(j, i) = acc;
        }
    }
    std::vector<double> vals;
    jacobi_sweeps(g, vals, nullptr);
    double top = 0.0;
    for (double v : vals) top = std::max(top, v);
    return std::sqrt(top);
}

namespace {

double poly_eval(const std::vector<double>& c, double t)
{
    double acc = 0.0;
    for (double ck : c) acc = acc * t + ck;
    return acc;
}

double poly_deriv_eval(const std::vector<double>& c, double t)
{
    const int deg = static_cast<int>(c.size()) - 1;
    double acc = 0.0;
    for (int k = 0; k < deg; ++k) acc = acc * t + c[k] * (deg - k);
    return acc;
}

void newton_polish(const std::vector<double>& c, double& t)
{
    for (int it = 0; it < 60; ++it) {
        const double f = poly_eval(c, t);
        const double df = poly_deriv_eval(c, t);
        if (df == 0.0) return;
        const double step = f / df;
        if (!std::isfinite(step)) return;
        t -= step;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(t))) return;
    }
}

// Real roots of the monic cubic t^3 + a t^2 + b t + c, unpolished.
std::vector<double> monic_cubic_roots(double a, double b, double c)
{
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const double shift = -a / 3.0;
    std::vector<double> ys;
    const double disc = -4.0 * p * p * p - 27.0 * q * q;
    if (p == 0.0 && q == 0.0) {
        ys.push_back(0.0);
    } else if (disc >= 0.0 && p < 0.0) {
        const double m = 2.0 * std::sqrt(-p / 3.0);
        double u = 3.0 * q / (p * m);
        u = std::clamp(u, -1.0, 1.0);
        const double theta = std::acos(u) / 3.0;
        constexpr double two_pi_3 = 2.0 * std::numbers::pi / 3.0;
        ys.push_back(m * std::cos(theta));
        ys.push_back(m * std::cos(theta - two_pi_3));
        ys.push_back(m * std::cos(theta - 2.0 * two_pi_3));
    } else {
        const double sq = std::sqrt(std::max(0.0, q * q / 4.0 + p * p * p / 27.0));
        const double u = std::cbrt(-q / 2.0 + sq);
        const double v = std::cbrt(-q / 2.0 - sq);
        ys.push_back(u + v);
    }
    for (double& y : ys) y += shift;
    return ys;
}

void append_quadratic_roots(double p, double q, std::vector<double>& out)
{
    // monic t^2 + p t + q
    const double disc = p * p - 4.0 * q;
    if (disc < 0.0) return;
    const double sq = std::sqrt(disc);
    if (p >= 0.0) {
        const double r1 = (-p - sq) / 2.0;
        out.push_back(r1);
        out.push_back(r1 != 0.0 ? q / r1 : (-p + sq) / 2.0);
    } else {
        const double r1 = (-p + sq) / 2.0;
        out.push_back(r1);
        out.push_back(r1 != 0.0 ? q / r1 : (-p - sq) / 2.0);
    }
}

} // namespace

std::vector<double> real_roots(const std::vector<double>& coeffs)
{
    if (coeffs.size() > 5) throw std::invalid_argument("real_roots: degree must be <= 4");
    double max_c = 0.0;
    for (double c : coeffs) max_c = std::max(max_c, std::abs(c));
    if (max_c == 0.0) throw std::domain_error("real_roots: zero polynomial");

    // strip negligible leading coefficients
    std::size_t first = 0;
    while (first + 1 < coeffs.size() && std::abs(coeffs[first]) <= 1e-14 * max_c) ++first;
    std::vector<double> c(coeffs.begin() + static_cast<std::ptrdiff_t>(first), coeffs.end());
    const int deg = static_cast<int>(c.size()) - 1;

    std::vector<double> cand;
    if (deg == 0) {
        return {};
    } else if (deg == 1) {
        cand.push_back(-c[1] / c[0]);
    } else if (deg == 2) {
        append_quadratic_roots(c[1] / c[0], c[2] / c[0], cand);
    } else if (deg == 3) {
        cand = monic_cubic_roots(c[1] / c[0], c[2] / c[0], c[3] / c[0]);
    } else {
        const double a = c[1] / c[0], b = c[2] / c[0], cc = c[3] / c[0], e = c[4] / c[0];
        const double p = b - 3.0 * a * a / 8.0;
        const double q = cc - a * b / 2.0 + a * a * a / 8.0;
        const double r = e - a * cc / 4.0 + a * a * b / 16.0 - 3.0 * a * a * a * a / 256.0;
        const double scale = std::max({1.0, std::abs(p), std::abs(r)});
        std::vector<double> ys;
        if (std::abs(q) <= 1e-14 * scale) {
            // biquadratic in y^2
            std::vector<double> zs;
            append_quadratic_roots(p, r, zs);
            for (double z : zs) {
                if (z < 0.0) continue;
                const double y = std::sqrt(z);
                ys.push_back(y);
                ys.push_back(-y);
            }
        } else {
            // Ferrari: resolvent 8m^3 + 8pm^2 + (2p^2-8r)m - q^2 = 0 has a
            // positive real root; the largest real root is the stable pick.
            const auto ms = monic_cubic_roots(p, p * p / 4.0 - r, -q * q / 8.0);
            double m = ms[0];
            for (double v : ms) m = std::max(m, v);
            if (m > 0.0) {
                const double alpha = std::sqrt(2.0 * m);
                const double gamma = q / (4.0 * m) * alpha;
                append_quadratic_roots(-alpha, p / 2.0 + m + gamma, ys);
                append_quadratic_roots(alpha, p / 2.0 + m - gamma, ys);
            }
        }
        for (double y : ys) cand.push_back(y - a / 4.0);
    }

    for (double& t : cand) newton_polish(coeffs, t);

    const int full_deg = static_cast<int>(coeffs.size()) - 1;
    std::vector<double> roots;
    for (double t : cand) {
        if (!std::isfinite(t)) continue;
        const double bound = 1e-10 * (1.0 + max_c * std::pow(1.0 + std::abs(t), full_deg));
        if (std::abs(poly_eval(coeffs, t)) <= bound) roots.push_back(t);
    }
    std::sort(roots.begin(), roots.end());
    std::vector<double> merged;
    for (double t : roots) {
        if (merged.empty() || t - merged.back() > 1e-8) merged.push_back(t);
    }
    return merged;
}

} // namespace tracemax
