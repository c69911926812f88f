#include "tracemax/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "tracemax/kernels.hpp"

namespace tracemax {

std::size_t pow_size(int n, int d)
{
    std::size_t r = 1;
    for (int k = 0; k < d; ++k) r *= static_cast<std::size_t>(n);
    return r;
}

DenseTensor::DenseTensor(int order, int dim) : order_(order), dim_(dim)
{
    if (order < 2 || dim < 2) throw std::invalid_argument("DenseTensor: need order >= 2 and dim >= 2");
    data_.assign(pow_size(dim, order), 0.0);
}

DenseTensor DenseTensor::from_data(int order, int dim, std::vector<double> data)
{
    DenseTensor t(order, dim);
    if (data.size() != t.size()) throw std::invalid_argument("DenseTensor: data length must be dim^order");
    t.data_ = std::move(data);
    return t;
}

std::size_t DenseTensor::flat_index(std::span<const int> idx) const
{
    std::size_t off = 0;
    std::size_t stride = 1;
    for (int m = 0; m < order_; ++m) {
        off += static_cast<std::size_t>(idx[m]) * stride;
        stride *= static_cast<std::size_t>(dim_);
    }
    return off;
}

double DenseTensor::at(std::span<const int> idx) const
{
    if (static_cast<int>(idx.size()) != order_) throw std::out_of_range("DenseTensor::at: index arity mismatch");
    for (int m = 0; m < order_; ++m)
        if (idx[m] < 0 || idx[m] >= dim_) throw std::out_of_range("DenseTensor::at: index out of range");
    return data_[flat_index(idx)];
}

void DenseTensor::set(std::span<const int> idx, double value)
{
    if (static_cast<int>(idx.size()) != order_) throw std::out_of_range("DenseTensor::set: index arity mismatch");
    for (int m = 0; m < order_; ++m)
        if (idx[m] < 0 || idx[m] >= dim_) throw std::out_of_range("DenseTensor::set: index out of range");
    data_[flat_index(idx)] = value;
}

std::size_t DenseTensor::mode_stride(int mode) const
{
    return pow_size(dim_, mode);
}

std::size_t DenseTensor::diag_stride() const
{
    std::size_t s = 0;
    std::size_t stride = 1;
    for (int m = 0; m < order_; ++m) {
        s += stride;
        stride *= static_cast<std::size_t>(dim_);
    }
    return s;
}

Matrix matricize(const DenseTensor& t, int mode)
{
    if (mode < 0 || mode >= t.order()) throw std::invalid_argument("matricize: invalid mode");
    const int n = t.dim();
    const std::size_t s = t.mode_stride(mode);
    const std::size_t ncols = t.size() / n;
    Matrix m(n, static_cast<int>(ncols));
    for (std::size_t c = 0; c < ncols; ++c) {
        const std::size_t base = c % s + (c / s) * s * n;
        for (int r = 0; r < n; ++r) m(r, static_cast<int>(c)) = t[base + static_cast<std::size_t>(r) * s];
    }
    return m;
}

DenseTensor dematricize(const Matrix& m, int order, int dim, int mode)
{
    if (mode < 0 || mode >= order) throw std::invalid_argument("dematricize: invalid mode");
    DenseTensor t(order, dim);
    if (m.rows() != dim || static_cast<std::size_t>(m.cols()) != t.size() / dim)
        throw std::invalid_argument("dematricize: shape mismatch");
    const std::size_t s = t.mode_stride(mode);
    const std::size_t ncols = t.size() / dim;
    for (std::size_t c = 0; c < ncols; ++c) {
        const std::size_t base = c % s + (c / s) * s * dim;
        for (int r = 0; r < dim; ++r) t[base + static_cast<std::size_t>(r) * s] = m(r, static_cast<int>(c));
    }
    return t;
}

DenseTensor mode_product(const DenseTensor& t, const Matrix& x, int mode)
{
    if (mode < 0 || mode >= t.order()) throw std::invalid_argument("mode_product: invalid mode");
    if (x.rows() != t.dim() || x.cols() != t.dim()) throw std::invalid_argument("mode_product: matrix must be n x n");
    DenseTensor out(t.order(), t.dim());
    kernels::mode_product(t.raw(), out.raw(), x.data().data(), t.dim(), t.order(), mode);
    return out;
}

double trace(const DenseTensor& t)
{
    const std::size_t step = t.diag_stride();
    double acc = 0.0;
    for (int r = 0; r < t.dim(); ++r) acc += t[static_cast<std::size_t>(r) * step];
    return acc;
}

double inner_product(const DenseTensor& a, const DenseTensor& b)
{
    if (a.order() != b.order() || a.dim() != b.dim()) throw std::invalid_argument("inner_product: shape mismatch");
    return kernels::dot(a.raw(), b.raw(), a.size());
}

double frobenius_norm(const DenseTensor& t)
{
    return std::sqrt(kernels::sum_squares(t.raw(), t.size()));
}

double off_norm(const DenseTensor& t)
{
    const std::size_t step = t.diag_stride();
    double diag2 = 0.0;
    for (int r = 0; r < t.dim(); ++r) {
        const double v = t[static_cast<std::size_t>(r) * step];
        diag2 += v * v;
    }
    const double total2 = kernels::sum_squares(t.raw(), t.size());
    return std::sqrt(std::max(0.0, total2 - diag2));
}

double relative_off_norm(const DenseTensor& t)
{
    const double nrm = frobenius_norm(t);
    if (nrm == 0.0) throw std::domain_error("relative_off_norm: zero tensor");
    return off_norm(t) / nrm;
}

Matrix diagonal_fiber_matrix(const DenseTensor& t, int mode)
{
    if (mode < 0 || mode >= t.order()) throw std::invalid_argument("diagonal_fiber_matrix: invalid mode");
    const int n = t.dim();
    const std::size_t ms = t.mode_stride(mode);
    const std::size_t rest = t.diag_stride() - ms; // step of r with the mode-`mode` index held fixed
    Matrix d(n, n);
    for (int r = 0; r < n; ++r) {
        const std::size_t base = static_cast<std::size_t>(r) * rest;
        for (int tt = 0; tt < n; ++tt) d(tt, r) = t[base + static_cast<std::size_t>(tt) * ms];
    }
    return d;
}

namespace {

void decode_index(std::size_t flat, int n, int d, int* idx)
{
    for (int m = 0; m < d; ++m) {
        idx[m] = static_cast<int>(flat % n);
        flat /= n;
    }
}

} // namespace

bool is_symmetric(const DenseTensor& t, double tol)
{
    const int d = t.order();
    const int n = t.dim();
    std::vector<int> idx(d), swp(d);
    for (std::size_t f = 0; f < t.size(); ++f) {
        decode_index(f, n, d, idx.data());
        for (int a = 0; a < d; ++a) {
            for (int b = a + 1; b < d; ++b) {
                std::copy(idx.begin(), idx.end(), swp.begin());
                std::swap(swp[a], swp[b]);
                if (std::abs(t[f] - t[t.flat_index(swp)]) > tol) return false;
            }
        }
    }
    return true;
}

bool is_antisymmetric(const DenseTensor& t, double tol)
{
    const int d = t.order();
    const int n = t.dim();
    std::vector<int> idx(d), swp(d);
    for (std::size_t f = 0; f < t.size(); ++f) {
        decode_index(f, n, d, idx.data());
        for (int a = 0; a < d; ++a) {
            for (int b = a + 1; b < d; ++b) {
                std::copy(idx.begin(), idx.end(), swp.begin());
                std::swap(swp[a], swp[b]);
                if (std::abs(t[f] + t[t.flat_index(swp)]) > tol) return false;
            }
        }
    }
    return true;
}

double symmetry_error(const DenseTensor& t)
{
    const int d = t.order();
    const int n = t.dim();
    std::vector<int> idx(d), swp(d);
    double mx = 0.0;
    for (std::size_t f = 0; f < t.size(); ++f) {
        decode_index(f, n, d, idx.data());
        for (int a = 0; a < d; ++a) {
            for (int b = a + 1; b < d; ++b) {
                std::copy(idx.begin(), idx.end(), swp.begin());
                std::swap(swp[a], swp[b]);
                mx = std::max(mx, std::abs(t[f] - t[t.flat_index(swp)]));
            }
        }
    }
    return mx;
}

DenseTensor symmetrize(const DenseTensor& t)
{
    const int d = t.order();
    const int n = t.dim();
    DenseTensor out(d, n);
    std::vector<int> idx(d), rep(d);
    for (std::size_t f = 0; f < t.size(); ++f) {
        decode_index(f, n, d, idx.data());
        if (!std::is_sorted(idx.begin(), idx.end())) continue;
        // orbit representative: average over the distinct arrangements, then
        // write the value back to every arrangement
        std::copy(idx.begin(), idx.end(), rep.begin());
        double acc = 0.0;
        int cnt = 0;
        do {
            acc += t[t.flat_index(rep)];
            ++cnt;
        } while (std::next_permutation(rep.begin(), rep.end()));
        const double avg = acc / cnt;
        std::copy(idx.begin(), idx.end(), rep.begin());
        do {
            out[out.flat_index(rep)] = avg;
        } while (std::next_permutation(rep.begin(), rep.end()));
    }
    return out;
}

void write_tns(const DenseTensor& t, std::ostream& os)
{
    os << "TNS " << t.order() << ' ' << t.dim() << '\n';
    os << std::setprecision(17);
    for (std::size_t f = 0; f < t.size(); ++f) os << t[f] << '\n';
}

void write_tns_file(const DenseTensor& t, const std::string& path)
{
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_tns(t, os);
}

DenseTensor read_tns(std::istream& is)
{
    std::string tag;
    int d = 0, n = 0;
    if (!(is >> tag >> d >> n) || tag != "TNS") throw std::runtime_error("read_tns: bad header");
    if (d < 2 || n < 2) throw std::runtime_error("read_tns: bad dimensions");
    DenseTensor t(d, n);
    for (std::size_t f = 0; f < t.size(); ++f) {
        double v = 0.0;
        if (!(is >> v)) throw std::runtime_error("read_tns: truncated data");
        if (!std::isfinite(v)) throw std::runtime_error("read_tns: non-finite entry");
        t[f] = v;
    }
    return t;
}

DenseTensor read_tns_file(const std::string& path)
{
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path);
    return read_tns(is);
}

} // namespace tracemax
