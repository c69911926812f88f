#include "tracemax/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "solver_detail.hpp"
#include "tracemax/gradients.hpp"
#include "tracemax/hosvd.hpp"
#include "tracemax/kernels.hpp"
#include "tracemax/linalg.hpp"

namespace tracemax {

namespace detail {

void validate_config(SolverConfig& cfg, int n)
{
    if (cfg.eta <= 0.0) cfg.eta = 1.0 / (100.0 * n);
    if (cfg.eta > 2.0 / n) throw std::invalid_argument("SolverConfig: eta must be in (0, 2/n]");
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("SolverConfig: tol must be positive");
    if (cfg.max_cycles < 1) throw std::invalid_argument("SolverConfig: max_cycles must be >= 1");
}

double diag_square_sum(const DenseTensor& w)
{
    const std::size_t step = w.diag_stride();
    double acc = 0.0;
    for (int r = 0; r < w.dim(); ++r) {
        const double v = w[static_cast<std::size_t>(r) * step];
        acc += v * v;
    }
    return acc;
}

double rel_offnorm_cached(const DenseTensor& w, double wnorm2)
{
    if (wnorm2 <= 0.0) return 0.0;
    const double off2 = wnorm2 - diag_square_sum(w);
    return std::sqrt(std::max(0.0, off2) / wnorm2);
}

double reconstruction_error(const DenseTensor& w, const std::vector<Matrix>& factors, const DenseTensor& a,
                            double input_norm)
{
    DenseTensor r = w;
    for (int l = 0; l < w.order(); ++l) r = mode_product(r, factors[static_cast<std::size_t>(l) % factors.size()], l);
    double acc = 0.0;
    for (std::size_t f = 0; f < r.size(); ++f) {
        const double dv = r[f] - a[f];
        acc += dv * dv;
    }
    return input_norm > 0.0 ? std::sqrt(acc) / input_norm : std::sqrt(acc);
}

} // namespace detail

DecompositionResult run_als(const DenseTensor& a, const SolverConfig& cfg_in)
{
    const int d = a.order();
    const int n = a.dim();
    if (d < 3) throw std::invalid_argument("run_als: order must be >= 3 (conjugation leaves the matrix trace constant)");
    SolverConfig cfg = cfg_in;
    detail::validate_config(cfg, n);

    DecompositionResult res;
    res.input_norm = frobenius_norm(a);

    DenseTensor w = a;
    std::vector<Matrix> factors(d, Matrix::identity(n));
    if (cfg.init == InitStrategy::Hosvd) {
        HosvdResult h = hosvd(a);
        w = std::move(h.preconditioned);
        factors = std::move(h.factors);
    }

    double wnorm2 = kernels::sum_squares(w.raw(), w.size());
    double tr = trace(w);
    res.initial_trace = tr;
    res.initial_rel_offnorm = detail::rel_offnorm_cached(w, wnorm2);
    res.status = SolverStatus::CycleCapReached;

    struct LambdaCache {
        Matrix lam;
        double norm = 0.0;
        bool valid = false;
    };
    std::vector<LambdaCache> cache(d);

    const std::size_t diag_step = w.diag_stride();
    res.telemetry.reserve(static_cast<std::size_t>(n) * (n - 1) / 2 * d * 8);

    for (int cycle = 1; cycle <= cfg.max_cycles; ++cycle) {
        const double tr_start = tr;
        long long applied_in_cycle = 0;
        long long degenerate_in_cycle = 0;
        int micro_index = 0;
        std::vector<long long> hist(static_cast<std::size_t>(d) + 1, 0);

        for (int i = 0; i < n - 1; ++i) {
            for (int j = i + 1; j < n; ++j) {
                int applied_modes = 0;
                for (int l = 0; l < d; ++l) {
                    LambdaCache& lc = cache[l];
                    if (!lc.valid) {
                        lc.lam = lambda_fast(w, l);
                        lc.norm = spectral_norm(lc.lam);
                        lc.valid = true;
                    }
                    const double lam_ij = lc.lam(i, j);
                    const double lam_norm = lc.norm;
                    bool applied = false;
                    if (pivot_admissible_given_norm(lam_ij, lam_norm, n, cfg.eta)) {
                        const std::size_t ms = w.mode_stride(l);
                        const std::size_t rest = diag_step - ms;
                        const double d_sum = w[static_cast<std::size_t>(i) * diag_step] +
                                             w[static_cast<std::size_t>(j) * diag_step];
                        const double n_diff = w[static_cast<std::size_t>(i) * rest + static_cast<std::size_t>(j) * ms] -
                                              w[static_cast<std::size_t>(j) * rest + static_cast<std::size_t>(i) * ms];
                        const auto rot = rotation_from_trace_pair(d_sum, n_diff);
                        if (!rot) {
                            ++res.degenerate_skips;
                            ++degenerate_in_cycle;
                        } else {
                            kernels::rotate_mode_pair(w.raw(), n, d, l, i, j, rot->c, rot->s);
                            post_multiply_rotation(factors[l], PlaneRotation{i, j, rot->c, rot->s});
                            tr += std::hypot(d_sum, n_diff) - d_sum;
                            for (auto& c : cache) c.valid = false;
                            applied = true;
                            ++applied_modes;
                            ++applied_in_cycle;
                        }
                    }
                    res.telemetry.push_back(TraceRecord{cycle, micro_index++, i, j, l, applied, tr,
                                                        detail::rel_offnorm_cached(w, wnorm2),
                                                        2.0 * std::abs(lam_ij), lam_norm});
                }
                ++hist[static_cast<std::size_t>(applied_modes)];
            }
        }

        // cycle boundary: resync the incrementally tracked quantities and
        // collect the conservation diagnostics
        wnorm2 = kernels::sum_squares(w.raw(), w.size());
        tr = trace(w);
        res.cycles = cycle;
        res.micro_hist_per_cycle.push_back(std::move(hist));
        if (res.input_norm > 0.0) {
            const double drift = std::abs(std::sqrt(wnorm2) - res.input_norm) / res.input_norm;
            res.max_norm_drift = std::max(res.max_norm_drift, drift);
        }
        for (const Matrix& u : factors)
            res.max_orthogonality_error = std::max(res.max_orthogonality_error, orthogonality_error(u));
        res.max_reconstruction_error =
            std::max(res.max_reconstruction_error, detail::reconstruction_error(w, factors, a, res.input_norm));

        if (applied_in_cycle == 0 && degenerate_in_cycle > 0) {
            res.status = SolverStatus::DegenerateStall;
            res.diagnostic = "cycle " + std::to_string(cycle) + " applied no rotations and hit " +
                             std::to_string(degenerate_in_cycle) +
                             " degenerate 0/0 trace pairs; the tensor has no usable diagonal signal" +
                             (cfg.init == InitStrategy::Identity
                                  ? " under identity initialization (antisymmetric-type input); rerun with HOSVD initialization"
                                  : "");
            break;
        }
        const double threshold = cfg.relative_tol ? cfg.tol * std::max(std::abs(tr), 1e-300) : cfg.tol;
        if (std::abs(tr - tr_start) < threshold) {
            res.converged = true;
            res.status = SolverStatus::Converged;
            break;
        }
    }

    res.core = std::move(w);
    res.factors = std::move(factors);
    res.final_trace = tr;
    res.final_rel_offnorm = detail::rel_offnorm_cached(res.core, wnorm2);
    return res;
}

double stationarity_check(const DecompositionResult& result)
{
    if (result.symmetric_run) return spectral_norm(lambda_fast_sym(result.core));
    double mx = 0.0;
    for (int l = 0; l < result.core.order(); ++l) mx = std::max(mx, spectral_norm(lambda_fast(result.core, l)));
    return mx;
}

} // namespace tracemax
