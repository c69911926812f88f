#include "tracemax/random_tensors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tracemax/linalg.hpp"

namespace tracemax {

double Rng::gaussian()
{
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform01(); // (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

Matrix random_orthogonal(int n, Rng& rng)
{
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = rng.gaussian();
    return householder_qr(m).q;
}

DenseTensor gen_uniform(int d, int n, std::uint64_t seed)
{
    Rng rng(seed);
    DenseTensor t(d, n);
    for (std::size_t f = 0; f < t.size(); ++f) t[f] = rng.uniform01();
    return t;
}

DiagonalizableTensor gen_orth_diagonalizable(int d, int n, std::uint64_t seed, double diag_lo, double diag_hi)
{
    Rng rng(seed);
    std::vector<double> diag(n);
    for (int r = 0; r < n; ++r) diag[r] = rng.uniform(diag_lo, diag_hi);
    DenseTensor a(d, n);
    const std::size_t step = a.diag_stride();
    for (int r = 0; r < n; ++r) a[static_cast<std::size_t>(r) * step] = diag[r];
    for (int l = 0; l < d; ++l) {
        const Matrix q = random_orthogonal(n, rng);
        a = mode_product(a, q, l);
    }
    return {std::move(a), std::move(diag)};
}

SymDiagonalizableTensor gen_sym_diagonalizable(int d, int n, std::uint64_t seed, double diag_lo, double diag_hi)
{
    Rng rng(seed);
    std::vector<double> diag(n);
    for (int r = 0; r < n; ++r) diag[r] = rng.uniform(diag_lo, diag_hi);
    DenseTensor a(d, n);
    const std::size_t step = a.diag_stride();
    for (int r = 0; r < n; ++r) a[static_cast<std::size_t>(r) * step] = diag[r];
    const Matrix q = random_orthogonal(n, rng);
    for (int l = 0; l < d; ++l) a = mode_product(a, q, l);
    return {std::move(a), std::move(diag), q};
}

namespace {

int inversion_parity(const std::vector<int>& arr)
{
    int inv = 0;
    for (std::size_t a = 0; a < arr.size(); ++a)
        for (std::size_t b = a + 1; b < arr.size(); ++b)
            if (arr[a] > arr[b]) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

} // namespace

DenseTensor gen_antisymmetric(int d, int n, std::uint64_t seed)
{
    const DenseTensor base = gen_uniform(d, n, seed);
    DenseTensor out(d, n);
    if (n < d) return out; // no index combination with all entries distinct

    std::vector<int> combo(d);
    for (int k = 0; k < d; ++k) combo[k] = k;
    double factorial = 1.0;
    for (int k = 2; k <= d; ++k) factorial *= k;

    std::vector<int> arr(d);
    while (true) {
        std::copy(combo.begin(), combo.end(), arr.begin());
        double acc = 0.0;
        do {
            acc += inversion_parity(arr) * base[base.flat_index(arr)];
        } while (std::next_permutation(arr.begin(), arr.end()));
        const double v = acc / factorial;

        std::copy(combo.begin(), combo.end(), arr.begin());
        do {
            out[out.flat_index(arr)] = inversion_parity(arr) * v;
        } while (std::next_permutation(arr.begin(), arr.end()));

        // next strictly increasing combination
        int k = d - 1;
        while (k >= 0 && combo[k] == n - d + k) --k;
        if (k < 0) break;
        ++combo[k];
        for (int m = k + 1; m < d; ++m) combo[m] = combo[m - 1] + 1;
    }
    return out;
}

} // namespace tracemax
