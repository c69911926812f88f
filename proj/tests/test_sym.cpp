#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tracemax/kernels.hpp"
#include "tracemax/random_tensors.hpp"
#include "tracemax/solver.hpp"
#include "tracemax/sym.hpp"
#include "tracemax/tensor.hpp"

using namespace tracemax;

namespace {

SymSubproblem random_sym_sub(int d, std::uint64_t seed)
{
    const DenseTensor t = symmetrize(gen_uniform(d, 3, seed));
    return extract_sym_subproblem(t, 0, 2);
}

// closed form of the d=3 pair sum for symmetric subproblems
double gs3_closed(const SymSubproblem& s, double c, double sn)
{
    const double a111 = s.at_mask(0), a222 = s.at_mask(7);
    const double a112 = s.at_mask(1), a122 = s.at_mask(3);
    return c * c * c * (a111 + a222) + 3.0 * c * c * sn * (a112 - a122) + 3.0 * c * sn * sn * (a112 + a122) +
           sn * sn * sn * (a222 - a111);
}

double gs_derivative_fd(const SymSubproblem& s, double phi)
{
    const double h = 1e-5; // central-difference noise floor eps/h must stay under the 1e-9 bound
    const double up = gs_value(s, std::cos(phi + h), std::sin(phi + h));
    const double dn = gs_value(s, std::cos(phi - h), std::sin(phi - h));
    return (up - dn) / (2.0 * h);
}

SymSubproblem make_sub3(double a111, double a222, double a112, double a122)
{
    SymSubproblem s;
    s.order = 3;
    s.entries.assign(8, 0.0);
    s.entries[0] = a111;
    s.entries[7] = a222;
    s.entries[1] = s.entries[2] = s.entries[4] = a112;
    s.entries[3] = s.entries[5] = s.entries[6] = a122;
    return s;
}

} // namespace

TEST(SymSubproblem, ExtractionRelabelsPivotPair)
{
    const DenseTensor t = symmetrize(gen_uniform(3, 4, 80));
    const SymSubproblem s = extract_sym_subproblem(t, 1, 3);
    EXPECT_EQ(s.at_mask(0), t.at(std::array{1, 1, 1}));
    EXPECT_EQ(s.at_mask(7), t.at(std::array{3, 3, 3}));
    EXPECT_EQ(s.at_mask(2), t.at(std::array{1, 3, 1}));
    EXPECT_EQ(s.at_mask(5), t.at(std::array{3, 1, 3}));
}

TEST(GsValue, IdentityRotationReturnsPairSum)
{
    const SymSubproblem s = random_sym_sub(3, 81);
    EXPECT_EQ(gs_value(s, 1.0, 0.0), s.at_mask(0) + s.at_mask(7));
}

TEST(GsValue, MatchesClosedFormOrder3)
{
    Rng rng(82);
    for (int trial = 0; trial < 200; ++trial) {
        const SymSubproblem s = random_sym_sub(3, 1000 + trial);
        const double phi = rng.uniform(-std::numbers::pi, std::numbers::pi);
        ASSERT_NEAR(gs_value(s, std::cos(phi), std::sin(phi)), gs3_closed(s, std::cos(phi), std::sin(phi)), 1e-13);
    }
}

TEST(GsValue, QuarterTurnSinCubeTerm)
{
    const SymSubproblem s = make_sub3(0.7, -0.4, 0.0, 0.0);
    EXPECT_NEAR(gs_value(s, 0.0, 1.0), -0.4 - 0.7, 1e-15);
}

TEST(AnglePoly, Order3ReductionCase)
{
    // a112 = a122 = 0 reduces the cubic to t ((a111-a222) t + (a111+a222))
    const SymSubproblem s = make_sub3(2.0, 0.5, 0.0, 0.0);
    const auto c = angle_poly_coeffs(s);
    ASSERT_EQ(c.size(), 4u);
    EXPECT_EQ(c[0], 0.0);
    EXPECT_EQ(c[1], 1.5);
    EXPECT_EQ(c[2], 2.5);
    EXPECT_EQ(c[3], 0.0);
    const auto roots = real_roots(c);
    bool has_zero = false;
    for (double t : roots) has_zero = has_zero || std::abs(t) <= 1e-12;
    EXPECT_TRUE(has_zero);
}

TEST(AnglePoly, DerivativeResidualOracleOrder3And4)
{
    for (int d : {3, 4}) {
        for (int trial = 0; trial < 1000; ++trial) {
            const SymSubproblem s = random_sym_sub(d, 2000 + trial);
            std::vector<double> roots;
            try {
                roots = real_roots(angle_poly_coeffs(s));
            } catch (const std::domain_error&) {
                continue;
            }
            for (double t : roots) {
                const double phi = std::atan(t);
                ASSERT_LE(std::abs(gs_derivative_fd(s, phi)), 1e-9)
                    << "d=" << d << " trial=" << trial << " t=" << t;
            }
        }
    }
}

// pins every polynomial coefficient, not just the roots: the stationarity
// polynomial satisfies g_s'(phi) = -d * cos^d(phi) * P(tan phi)
TEST(AnglePoly, DerivativeFactorizationIdentity)
{
    Rng rng(83);
    for (int d : {3, 4}) {
        for (int trial = 0; trial < 200; ++trial) {
            const SymSubproblem s = random_sym_sub(d, 4000 + trial);
            const auto coeffs = angle_poly_coeffs(s);
            const double t = rng.uniform(-3.0, 3.0);
            const double phi = std::atan(t);
            double poly = 0.0;
            for (double c : coeffs) poly = poly * t + c;
            const double c = std::cos(phi);
            double cd = 1.0;
            for (int k = 0; k < d; ++k) cd *= c;
            const double expect = (d == 3 ? -3.0 : -4.0) * cd * poly;
            ASSERT_NEAR(gs_derivative_fd(s, phi), expect, 1e-7) << "d=" << d << " trial=" << trial;
        }
    }
}

TEST(BestSymAngle, AlreadyOptimalStaysPut)
{
    const SymSubproblem s = make_sub3(1.3, 1.3, 0.0, 0.0);
    const RotationCoeffs r = best_sym_angle(s);
    EXPECT_NEAR(gs_value(s, r.c, r.s), 2.6, 1e-12);
    EXPECT_NEAR(std::abs(r.c), 1.0, 1e-12);
}

TEST(BestSymAngle, QuarterTurnCandidateWins)
{
    const SymSubproblem s = make_sub3(-1.0, 1.0, 0.0, 0.0);
    const RotationCoeffs r = best_sym_angle(s);
    EXPECT_NEAR(std::abs(r.s), 1.0, 1e-12);
    EXPECT_NEAR(gs_value(s, r.c, r.s), 2.0, 1e-12);
}

TEST(BestSymAngle, BeatsDenseSamplingOrder3And4)
{
    for (int d : {3, 4}) {
        for (int trial = 0; trial < 100; ++trial) {
            const SymSubproblem s = random_sym_sub(d, 3000 + trial);
            const RotationCoeffs r = best_sym_angle(s);
            const double achieved = gs_value(s, r.c, r.s);
            ASSERT_GE(achieved, s.at_mask(0) + s.at_mask(s.full_mask()) - 1e-15); // never worse than no rotation
            double best = -1e300;
            for (int k = 0; k < 100000; ++k) {
                const double phi = -std::numbers::pi + 2.0 * std::numbers::pi * k / 100000.0;
                best = std::max(best, gs_value(s, std::cos(phi), std::sin(phi)));
            }
            ASSERT_GE(achieved, best - 1e-9) << "d=" << d << " trial=" << trial;
        }
    }
}

TEST(BestSymAngle, FallbackScanForHigherOrder)
{
    const SymSubproblem s = random_sym_sub(5, 84);
    const RotationCoeffs r = best_sym_angle(s);
    const double achieved = gs_value(s, r.c, r.s);
    ASSERT_GE(achieved, s.at_mask(0) + s.at_mask(s.full_mask()) - 1e-15);
    double best = -1e300;
    for (int k = 0; k < 20000; ++k) {
        const double phi = -std::numbers::pi + 2.0 * std::numbers::pi * k / 20000.0;
        best = std::max(best, gs_value(s, std::cos(phi), std::sin(phi)));
    }
    EXPECT_GE(achieved, best - 1e-7);
}

TEST(Mode1Angle, DelegatesToTracePairFormula)
{
    const SymSubproblem s = random_sym_sub(3, 85);
    const auto r = mode1_angle(s);
    ASSERT_TRUE(r.has_value());
    const double d_sum = s.at_mask(0) + s.at_mask(7);
    const double n_diff = s.at_mask(1) - s.at_mask(6);
    const auto expect = rotation_from_trace_pair(d_sum, n_diff);
    EXPECT_EQ(r->c, expect->c);
    EXPECT_EQ(r->s, expect->s);

    // symmetric subproblem: the (D, N) pair is the same for every mode
    for (int m = 1; m < 3; ++m) {
        const unsigned bit = 1u << m;
        EXPECT_NEAR(s.at_mask(bit), s.at_mask(1), 1e-13);
        EXPECT_NEAR(s.at_mask(s.full_mask() & ~bit), s.at_mask(6), 1e-13);
    }

    SymSubproblem zero;
    zero.order = 3;
    zero.entries.assign(8, 0.0);
    EXPECT_FALSE(mode1_angle(zero).has_value());
}

// op-level d=2 sanity: applying the same rotation on both sides of a matrix
// leaves the trace constant
TEST(SymOps, MatrixCaseTraceInvariant)
{
    DenseTensor m = symmetrize(gen_uniform(2, 5, 86));
    const double before = trace(m);
    for (int l = 0; l < 2; ++l) kernels::rotate_mode_pair(m.raw(), 5, 2, l, 1, 3, std::cos(0.7), std::sin(0.7));
    EXPECT_NEAR(trace(m), before, 1e-14);
}

TEST(RunSym, RejectsBadInput)
{
    EXPECT_THROW(run_sym(gen_uniform(3, 4, 87), SolverConfig{}), std::invalid_argument);
    EXPECT_THROW(run_sym(symmetrize(gen_uniform(2, 4, 88)), SolverConfig{}), std::invalid_argument);
}

TEST(RunSym, FullVariantRecoversSymmetricDiagonalizable)
{
    const auto gen = gen_sym_diagonalizable(3, 10, 5);
    double planted = 0.0;
    for (double v : gen.true_diagonal) planted += v;

    SolverConfig cfg;
    cfg.eta = 1.0 / (1000.0 * 10);
    cfg.tol = 1e-6;
    const DecompositionResult res = run_sym(gen.tensor, cfg, SymVariant::Full);
    EXPECT_TRUE(res.converged);
    EXPECT_LE(res.final_rel_offnorm, 1e-6);
    EXPECT_NEAR(res.final_trace, planted, 1e-3);
    EXPECT_LE(res.max_symmetry_error, 1e-10);
    EXPECT_LE(res.max_norm_drift, 1e-10);
    EXPECT_LE(res.max_orthogonality_error, 1e-10);
    EXPECT_LE(res.max_reconstruction_error, 1e-9);
    ASSERT_EQ(res.factors.size(), 1u);
    EXPECT_TRUE(res.symmetric_run);

    // Full-variant monotonicity across applied records
    double last = -1e300;
    for (const TraceRecord& r : res.telemetry) {
        if (!r.applied) continue;
        ASSERT_GE(r.trace, last - 1e-12);
        last = r.trace;
        ASSERT_EQ(r.mode, -1);
    }
    EXPECT_LE(stationarity_check(res), 1e-3 * res.input_norm);
}

TEST(RunSym, Mode1ConvergesToSameTraceNoFaster)
{
    const auto gen = gen_sym_diagonalizable(3, 10, 5);
    SolverConfig cfg;
    cfg.eta = 1.0 / (1000.0 * 10);
    const DecompositionResult full = run_sym(gen.tensor, cfg, SymVariant::Full);
    const DecompositionResult mode1 = run_sym(gen.tensor, cfg, SymVariant::Mode1);
    EXPECT_TRUE(full.converged);
    EXPECT_TRUE(mode1.converged);
    EXPECT_NEAR(full.final_trace, mode1.final_trace, 1e-3);
    EXPECT_GE(mode1.cycles, full.cycles);
    EXPECT_LE(mode1.max_symmetry_error, 1e-10);
}

// order 5 exercises the numeric angle fallback through the whole solver
TEST(RunSym, OrderFiveFallbackRecovers)
{
    const auto gen = gen_sym_diagonalizable(5, 4, 8);
    SolverConfig cfg;
    cfg.eta = 1.0 / (1000.0 * 4);
    cfg.tol = 1e-6;
    const DecompositionResult res = run_sym(gen.tensor, cfg, SymVariant::Full);
    EXPECT_TRUE(res.converged);
    EXPECT_LE(res.final_rel_offnorm, 1e-4);
    EXPECT_LE(res.max_symmetry_error, 1e-10);
    double last = -1e300;
    for (const TraceRecord& r : res.telemetry) {
        if (!r.applied) continue;
        ASSERT_GE(r.trace, last - 1e-12);
        last = r.trace;
    }
}

TEST(RunSym, DeterministicRerun)
{
    const auto gen = gen_sym_diagonalizable(3, 6, 7);
    SolverConfig cfg;
    const DecompositionResult a = run_sym(gen.tensor, cfg, SymVariant::Full);
    const DecompositionResult b = run_sym(gen.tensor, cfg, SymVariant::Full);
    ASSERT_EQ(a.telemetry.size(), b.telemetry.size());
    for (std::size_t k = 0; k < a.telemetry.size(); ++k) ASSERT_EQ(a.telemetry[k].trace, b.telemetry[k].trace);
}
