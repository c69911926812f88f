#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tracemax/kernels.hpp"
#include "tracemax/random_tensors.hpp"

// Times the OpenMP kernels against the serial reference implementations on
// the experiment shapes. Each cell is the best of `reps` runs.

namespace {

using Clock = std::chrono::steady_clock;

double bench(int reps, const std::function<void()>& fn)
{
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = Clock::now();
        fn();
        const auto t1 = Clock::now();
        best = std::min(best, std::chrono::duration<double, std::micro>(t1 - t0).count());
    }
    return best;
}

volatile double g_sink = 0.0;

} // namespace

int main(int argc, char** argv)
{
    const int reps = argc > 1 ? std::atoi(argv[1]) : 25;
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run the same serial code path\n");
#endif
    std::printf("%-8s %-18s %12s %12s %8s\n", "shape", "kernel", "serial(us)", "parallel(us)", "speedup");

    struct Shape {
        int d, n;
    };
    const std::vector<Shape> shapes = {{3, 20}, {4, 10}, {6, 5}, {3, 60}, {4, 24}};

    for (const auto [d, n] : shapes) {
        using namespace tracemax;
        const DenseTensor a = gen_uniform(d, n, 7);
        DenseTensor out(d, n);
        Rng rng(3);
        Matrix x = random_orthogonal(n, rng);
        std::vector<double> gram(static_cast<std::size_t>(n) * n);
        DenseTensor work = a;
        char label[32];
        std::snprintf(label, sizeof label, "d=%d n=%d", d, n);

        const double s1 = bench(reps, [&] { kernels::serial::mode_product(a.raw(), out.raw(), x.data().data(), n, d, 0); });
        const double p1 = bench(reps, [&] { kernels::mode_product(a.raw(), out.raw(), x.data().data(), n, d, 0); });
        std::printf("%-8s %-18s %12.2f %12.2f %7.2fx\n", label, "mode_product", s1, p1, s1 / p1);

        const double s2 = bench(reps, [&] {
            for (int l = 0; l < d; ++l) kernels::serial::rotate_mode_pair(work.raw(), n, d, l, 0, 1, 0.8, 0.6);
        });
        const double p2 = bench(reps, [&] {
            for (int l = 0; l < d; ++l) kernels::rotate_mode_pair(work.raw(), n, d, l, 0, 1, 0.8, 0.6);
        });
        std::printf("%-8s %-18s %12.2f %12.2f %7.2fx\n", label, "rotate_mode_pair", s2, p2, s2 / p2);

        const double s3 = bench(reps, [&] { kernels::serial::gram_mode(a.raw(), gram.data(), n, d, 0); });
        const double p3 = bench(reps, [&] { kernels::gram_mode(a.raw(), gram.data(), n, d, 0); });
        std::printf("%-8s %-18s %12.2f %12.2f %7.2fx\n", label, "gram_mode", s3, p3, s3 / p3);

        const double s4 = bench(reps, [&] { g_sink = kernels::serial::sum_squares(a.raw(), a.size()); });
        const double p4 = bench(reps, [&] { g_sink = kernels::sum_squares(a.raw(), a.size()); });
        std::printf("%-8s %-18s %12.2f %12.2f %7.2fx\n", label, "sum_squares", s4, p4, s4 / p4);
    }
    return 0;
}
