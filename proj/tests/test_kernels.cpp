#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tracemax/kernels.hpp"
#include "tracemax/random_tensors.hpp"
#include "tracemax/tensor.hpp"

using namespace tracemax;

namespace {

struct Shape {
    int d, n;
};
const Shape kShapes[] = {{3, 20}, {4, 10}, {6, 5}, {3, 4}};

} // namespace

TEST(Kernels, ModeProductMatchesSerialBitwise)
{
    for (const auto [d, n] : kShapes) {
        const DenseTensor a = gen_uniform(d, n, 101);
        Rng rng(5);
        const Matrix x = random_orthogonal(n, rng);
        DenseTensor out_p(d, n), out_s(d, n);
        for (int l = 0; l < d; ++l) {
            kernels::mode_product(a.raw(), out_p.raw(), x.data().data(), n, d, l);
            kernels::serial::mode_product(a.raw(), out_s.raw(), x.data().data(), n, d, l);
            for (std::size_t f = 0; f < a.size(); ++f) ASSERT_EQ(out_p[f], out_s[f]);
        }
    }
}

TEST(Kernels, RotateModePairMatchesSerialBitwise)
{
    for (const auto [d, n] : kShapes) {
        DenseTensor wp = gen_uniform(d, n, 102);
        DenseTensor ws = wp;
        for (int l = 0; l < d; ++l) {
            kernels::rotate_mode_pair(wp.raw(), n, d, l, 0, n - 1, 0.6, 0.8);
            kernels::serial::rotate_mode_pair(ws.raw(), n, d, l, 0, n - 1, 0.6, 0.8);
        }
        for (std::size_t f = 0; f < wp.size(); ++f) ASSERT_EQ(wp[f], ws[f]);
    }
}

TEST(Kernels, GramMatchesSerialBitwise)
{
    for (const auto [d, n] : kShapes) {
        const DenseTensor a = gen_uniform(d, n, 103);
        std::vector<double> gp(static_cast<std::size_t>(n) * n), gs(gp.size());
        for (int l = 0; l < d; ++l) {
            kernels::gram_mode(a.raw(), gp.data(), n, d, l);
            kernels::serial::gram_mode(a.raw(), gs.data(), n, d, l);
            for (std::size_t f = 0; f < gp.size(); ++f) ASSERT_EQ(gp[f], gs[f]);
        }
    }
}

TEST(Kernels, ReductionsMatchSerialClosely)
{
    const DenseTensor a = gen_uniform(4, 10, 104);
    const DenseTensor b = gen_uniform(4, 10, 105);
    const double sp = kernels::sum_squares(a.raw(), a.size());
    const double ss = kernels::serial::sum_squares(a.raw(), a.size());
    EXPECT_NEAR(sp, ss, 1e-13 * ss);
    const double dp = kernels::dot(a.raw(), b.raw(), a.size());
    const double ds = kernels::serial::dot(a.raw(), b.raw(), a.size());
    EXPECT_NEAR(dp, ds, 1e-13 * std::abs(ds));
}

TEST(Kernels, ReductionsAreRepeatable)
{
    const DenseTensor a = gen_uniform(3, 30, 106);
    const double first = kernels::sum_squares(a.raw(), a.size());
    for (int k = 0; k < 5; ++k) ASSERT_EQ(kernels::sum_squares(a.raw(), a.size()), first);
}

#ifdef _OPENMP
// reductions and element-wise kernels must not depend on the thread count
TEST(Kernels, ResultsIndependentOfThreadCount)
{
    const DenseTensor a = gen_uniform(3, 24, 109); // above the parallel grains
    Rng rng(11);
    const Matrix x = random_orthogonal(24, rng);
    const int saved = omp_get_max_threads();

    std::vector<double> sums, grams0;
    std::vector<DenseTensor> prods;
    for (int threads : {1, 2, saved}) {
        omp_set_num_threads(threads);
        sums.push_back(kernels::sum_squares(a.raw(), a.size()));
        DenseTensor out(3, 24);
        kernels::mode_product(a.raw(), out.raw(), x.data().data(), 24, 3, 1);
        prods.push_back(out);
        std::vector<double> g(24 * 24);
        kernels::gram_mode(a.raw(), g.data(), 24, 3, 0);
        grams0.push_back(g[0]);
    }
    omp_set_num_threads(saved);
    for (std::size_t k = 1; k < sums.size(); ++k) {
        ASSERT_EQ(sums[k], sums[0]);
        ASSERT_EQ(grams0[k], grams0[0]);
        for (std::size_t f = 0; f < prods[0].size(); ++f) ASSERT_EQ(prods[k][f], prods[0][f]);
    }
}
#endif

TEST(Kernels, RotationPreservesFrobeniusNorm)
{
    DenseTensor w = gen_uniform(3, 12, 107);
    const double before = frobenius_norm(w);
    Rng rng(9);
    for (int k = 0; k < 500; ++k) {
        const int i = static_cast<int>(rng.uniform01() * 11);
        const int j = i + 1 + static_cast<int>(rng.uniform01() * (11 - i));
        const double phi = rng.uniform(-3.0, 3.0);
        kernels::rotate_mode_pair(w.raw(), 12, 3, k % 3, i, j, std::cos(phi), std::sin(phi));
    }
    EXPECT_NEAR(frobenius_norm(w), before, 1e-13 * before);
}

// The mode-product kernel against the materialized-matricization route.
TEST(Kernels, ModeProductMatchesMatricizedMultiply)
{
    const DenseTensor a = gen_uniform(4, 5, 108);
    Rng rng(10);
    const Matrix x = random_orthogonal(5, rng);
    for (int l = 0; l < 4; ++l) {
        const DenseTensor fast = mode_product(a, x, l);
        const DenseTensor slow = dematricize(matmul(x, matricize(a, l)), 4, 5, l);
        for (std::size_t f = 0; f < a.size(); ++f) ASSERT_NEAR(fast[f], slow[f], 1e-14);
    }
}
