#include "tracemax/kernels.hpp"

#include <cstddef>
#include <vector>

namespace tracemax::kernels {

namespace {

std::size_t ipow(int n, int e)
{
    std::size_t r = 1;
    for (int k = 0; k < e; ++k) r *= static_cast<std::size_t>(n);
    return r;
}

constexpr std::size_t kChunk = 8192;       // reduction block, fixed so results do not depend on thread count
// Below these column counts the parallel region costs more than the loop;
// the production entry points fall back to the serial reference, which also
// keeps the small-size code path free of the outlined-loop overhead.
constexpr std::size_t kProductGrain = 2048;
constexpr std::size_t kRotateGrain = 8192;
constexpr std::size_t kGramGrain = 512;

} // namespace

void mode_product(const double* in, double* out, const double* x, int n, int d, int mode)
{
    const std::size_t s = ipow(n, mode);
    const std::size_t ncols = ipow(n, d - 1);
    if (ncols < kProductGrain) {
        serial::mode_product(in, out, x, n, d, mode);
        return;
    }
    const auto cols = static_cast<std::ptrdiff_t>(ncols);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < cols; ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) % s;
        const std::size_t hi = static_cast<std::size_t>(c) / s;
        const double* src = in + lo + hi * s * n;
        double* dst = out + lo + hi * s * n;
        for (int r = 0; r < n; ++r) {
            const double* xr = x + static_cast<std::size_t>(r) * n;
            double acc = 0.0;
            for (int t = 0; t < n; ++t) acc += xr[t] * src[static_cast<std::size_t>(t) * s];
            dst[static_cast<std::size_t>(r) * s] = acc;
        }
    }
}

void rotate_mode_pair(double* data, int n, int d, int mode, int i, int j, double c, double s)
{
    const std::size_t stride = ipow(n, mode);
    const std::size_t ncols = ipow(n, d - 1);
    if (ncols < kRotateGrain) {
        serial::rotate_mode_pair(data, n, d, mode, i, j, c, s);
        return;
    }
    const auto cols = static_cast<std::ptrdiff_t>(ncols);
    const std::size_t oi = static_cast<std::size_t>(i) * stride;
    const std::size_t oj = static_cast<std::size_t>(j) * stride;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t col = 0; col < cols; ++col) {
        const std::size_t lo = static_cast<std::size_t>(col) % stride;
        const std::size_t hi = static_cast<std::size_t>(col) / stride;
        double* base = data + lo + hi * stride * n;
        const double wi = base[oi];
        const double wj = base[oj];
        base[oi] = c * wi + s * wj;
        base[oj] = -s * wi + c * wj;
    }
}

void gram_mode(const double* data, double* g, int n, int d, int mode)
{
    const std::size_t stride = ipow(n, mode);
    const std::size_t ncols = ipow(n, d - 1);
    if (ncols < kGramGrain) {
        serial::gram_mode(data, g, n, d, mode);
        return;
    }
    const int npairs = n * (n + 1) / 2;
#pragma omp parallel for schedule(static)
    for (int p = 0; p < npairs; ++p) {
        // unrank p into (r, t) with r <= t
        int r = 0;
        int rem = p;
        while (rem >= n - r) {
            rem -= n - r;
            ++r;
        }
        const int t = r + rem;
        double acc = 0.0;
        for (std::size_t c = 0; c < ncols; ++c) {
            const std::size_t lo = c % stride;
            const std::size_t hi = c / stride;
            const double* base = data + lo + hi * stride * n;
            acc += base[static_cast<std::size_t>(r) * stride] * base[static_cast<std::size_t>(t) * stride];
        }
        g[static_cast<std::size_t>(r) * n + t] = acc;
        g[static_cast<std::size_t>(t) * n + r] = acc;
    }
}

double sum_squares(const double* x, std::size_t len)
{
    const std::size_t nchunks = (len + kChunk - 1) / kChunk;
    if (nchunks <= 1) return serial::sum_squares(x, len);
    std::vector<double> partial(nchunks, 0.0);
    const auto nc = static_cast<std::ptrdiff_t>(nchunks);
#pragma omp parallel for schedule(static) if (nc >= 4)
    for (std::ptrdiff_t k = 0; k < nc; ++k) {
        const std::size_t b = static_cast<std::size_t>(k) * kChunk;
        const std::size_t e = b + kChunk < len ? b + kChunk : len;
        double acc = 0.0;
        for (std::size_t m = b; m < e; ++m) acc += x[m] * x[m];
        partial[static_cast<std::size_t>(k)] = acc;
    }
    double total = 0.0;
    for (double v : partial) total += v;
    return total;
}

double dot(const double* x, const double* y, std::size_t len)
{
    const std::size_t nchunks = (len + kChunk - 1) / kChunk;
    if (nchunks <= 1) return serial::dot(x, y, len);
    std::vector<double> partial(nchunks, 0.0);
    const auto nc = static_cast<std::ptrdiff_t>(nchunks);
#pragma omp parallel for schedule(static) if (nc >= 4)
    for (std::ptrdiff_t k = 0; k < nc; ++k) {
        const std::size_t b = static_cast<std::size_t>(k) * kChunk;
        const std::size_t e = b + kChunk < len ? b + kChunk : len;
        double acc = 0.0;
        for (std::size_t m = b; m < e; ++m) acc += x[m] * y[m];
        partial[static_cast<std::size_t>(k)] = acc;
    }
    double total = 0.0;
    for (double v : partial) total += v;
    return total;
}

namespace serial {

void mode_product(const double* in, double* out, const double* x, int n, int d, int mode)
{
    const std::size_t s = ipow(n, mode);
    const std::size_t ncols = ipow(n, d - 1);
    for (std::size_t c = 0; c < ncols; ++c) {
        const std::size_t lo = c % s;
        const std::size_t hi = c / s;
        const double* src = in + lo + hi * s * n;
        double* dst = out + lo + hi * s * n;
        for (int r = 0; r < n; ++r) {
            const double* xr = x + static_cast<std::size_t>(r) * n;
            double acc = 0.0;
            for (int t = 0; t < n; ++t) acc += xr[t] * src[static_cast<std::size_t>(t) * s];
            dst[static_cast<std::size_t>(r) * s] = acc;
        }
    }
}

void rotate_mode_pair(double* data, int n, int d, int mode, int i, int j, double c, double s)
{
    const std::size_t stride = ipow(n, mode);
    const std::size_t ncols = ipow(n, d - 1);
    const std::size_t oi = static_cast<std::size_t>(i) * stride;
    const std::size_t oj = static_cast<std::size_t>(j) * stride;
    for (std::size_t col = 0; col < ncols; ++col) {
        const std::size_t lo = col % stride;
        const std::size_t hi = col / stride;
        double* base = data + lo + hi * stride * n;
        const double wi = base[oi];
        const double wj = base[oj];
        base[oi] = c * wi + s * wj;
        base[oj] = -s * wi + c * wj;
    }
}

void gram_mode(const double* data, double* g, int n, int d, int mode)
{
    const std::size_t stride = ipow(n, mode);
    const std::size_t ncols = ipow(n, d - 1);
    for (int r = 0; r < n; ++r) {
        for (int t = r; t < n; ++t) {
            double acc = 0.0;
            for (std::size_t c = 0; c < ncols; ++c) {
                const std::size_t lo = c % stride;
                const std::size_t hi = c / stride;
                const double* base = data + lo + hi * stride * n;
                acc += base[static_cast<std::size_t>(r) * stride] * base[static_cast<std::size_t>(t) * stride];
            }
            g[static_cast<std::size_t>(r) * n + t] = acc;
            g[static_cast<std::size_t>(t) * n + r] = acc;
        }
    }
}

double sum_squares(const double* x, std::size_t len)
{
    double acc = 0.0;
    for (std::size_t m = 0; m < len; ++m) acc += x[m] * x[m];
    return acc;
}

double dot(const double* x, const double* y, std::size_t len)
{
    double acc = 0.0;
    for (std::size_t m = 0; m < len; ++m) acc += x[m] * y[m];
    return acc;
}

} // namespace serial

} // namespace tracemax::kernels
