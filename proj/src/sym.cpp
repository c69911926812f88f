#include "tracemax/sym.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tracemax {

SymSubproblem extract_sym_subproblem(const DenseTensor& w, int p, int q)
{
    const int d = w.order();
    SymSubproblem sub;
    sub.order = d;
    sub.entries.resize(std::size_t{1} << d);
    std::vector<int> idx(d);
    for (unsigned mask = 0; mask < sub.entries.size(); ++mask) {
        for (int m = 0; m < d; ++m) idx[m] = (mask >> m) & 1u ? q : p;
        sub.entries[mask] = w[w.flat_index(idx)];
    }
    return sub;
}

double gs_value(const SymSubproblem& sub, double c, double s)
{
    std::vector<double> buf = sub.entries;
    const int d = sub.order;
    for (int m = 0; m < d; ++m) {
        const unsigned bit = 1u << m;
        for (unsigned mask = 0; mask < buf.size(); ++mask) {
            if (mask & bit) continue;
            const double a = buf[mask];
            const double b = buf[mask | bit];
            buf[mask] = c * a + s * b;
            buf[mask | bit] = -s * a + c * b;
        }
    }
    return buf.front() + buf.back();
}

namespace {

// Average of the entries with the given number of q-indices; the subproblem
// is symmetric up to drift, averaging the orbit smooths it out.
double popcount_avg(const SymSubproblem& sub, int ones)
{
    double acc = 0.0;
    int cnt = 0;
    for (unsigned mask = 0; mask <= sub.full_mask(); ++mask) {
        if (std::popcount(mask) == ones) {
            acc += sub.at_mask(mask);
            ++cnt;
        }
    }
    return acc / cnt;
}

double golden_section_max(const SymSubproblem& sub, double lo, double hi, double tol)
{
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = gs_value(sub, std::cos(x1), std::sin(x1));
    double f2 = gs_value(sub, std::cos(x2), std::sin(x2));
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = gs_value(sub, std::cos(x2), std::sin(x2));
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = gs_value(sub, std::cos(x1), std::sin(x1));
        }
    }
    return 0.5 * (a + b);
}

} // namespace

std::vector<double> angle_poly_coeffs(const SymSubproblem& sub)
{
    const int d = sub.order;
    if (d == 3) {
        const double a111 = sub.at_mask(0);
        const double a222 = sub.at_mask(sub.full_mask());
        const double a112 = popcount_avg(sub, 1);
        const double a122 = popcount_avg(sub, 2);
        return {a112 + a122,
                a111 - a222 + 2.0 * a112 - 2.0 * a122,
                a111 + a222 - 2.0 * a112 - 2.0 * a122,
                a122 - a112};
    }
    if (d == 4) {
        const double a1111 = sub.at_mask(0);
        const double a2222 = sub.at_mask(sub.full_mask());
        const double a1112 = popcount_avg(sub, 1);
        const double a1122 = popcount_avg(sub, 2);
        const double a1222 = popcount_avg(sub, 3);
        const double edge = a1222 - a1112;
        const double bulk = a1111 + a2222 - 6.0 * a1122;
        return {edge, -bulk, -6.0 * edge, bulk, edge};
    }
    throw std::invalid_argument("angle_poly_coeffs: closed form only for orders 3 and 4");
}

RotationCoeffs best_sym_angle(const SymSubproblem& sub)
{
    std::vector<RotationCoeffs> cand = {{1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
    if (sub.order == 3 || sub.order == 4) {
        std::vector<double> roots;
        try {
            roots = real_roots(angle_poly_coeffs(sub));
        } catch (const std::domain_error&) {
            // zero polynomial: g_s' vanishes identically on this pivot
        }
        for (double t : roots) {
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const double s = t * c;
            cand.push_back({c, s});
            cand.push_back({-c, -s});
        }
    } else {
        constexpr int kScan = 720;
        constexpr double half_pi = std::numbers::pi / 2.0;
        double best_phi = 0.0;
        double best_val = gs_value(sub, 1.0, 0.0);
        for (int k = 1; k <= kScan; ++k) {
            const double phi = -half_pi + k * (2.0 * half_pi / kScan);
            const double v = gs_value(sub, std::cos(phi), std::sin(phi));
            if (v > best_val) {
                best_val = v;
                best_phi = phi;
            }
        }
        const double step = 2.0 * half_pi / kScan;
        const double phi = golden_section_max(sub, best_phi - step, best_phi + step, 1e-12);
        cand.push_back({std::cos(phi), std::sin(phi)});
        cand.push_back({-std::cos(phi), -std::sin(phi)});
    }
    RotationCoeffs best = cand.front();
    double best_val = gs_value(sub, best.c, best.s);
    for (std::size_t k = 1; k < cand.size(); ++k) {
        const double v = gs_value(sub, cand[k].c, cand[k].s);
        if (v > best_val) {
            best_val = v;
            best = cand[k];
        }
    }
    return best;
}

std::optional<RotationCoeffs> mode1_angle(const SymSubproblem& sub)
{
    const double d_sum = sub.at_mask(0) + sub.at_mask(sub.full_mask());
    const double n_diff = sub.at_mask(1u) - sub.at_mask(sub.full_mask() & ~1u);
    return rotation_from_trace_pair(d_sum, n_diff);
}

} // namespace tracemax
