#include "tracemax/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "solver_detail.hpp"
#include "tracemax/gradients.hpp"
#include "tracemax/kernels.hpp"
#include "tracemax/linalg.hpp"
#include "tracemax/sym.hpp"

namespace tracemax {

DecompositionResult run_sym(const DenseTensor& a, const SolverConfig& cfg_in, SymVariant variant)
{
    const int d = a.order();
    const int n = a.dim();
    if (d < 3) throw std::invalid_argument("run_sym: order must be >= 3");
    if (!is_symmetric(a)) throw std::invalid_argument("run_sym: input tensor is not symmetric");
    SolverConfig cfg = cfg_in;
    detail::validate_config(cfg, n);

    DecompositionResult res;
    res.symmetric_run = true;
    res.input_norm = frobenius_norm(a);

    // Algorithm-defined identity start; cfg.init does not apply here because
    // per-mode HOSVD factors would break the symmetric structure.
    DenseTensor w = a;
    Matrix u = Matrix::identity(n);

    double wnorm2 = kernels::sum_squares(w.raw(), w.size());
    double tr = trace(w);
    res.initial_trace = tr;
    res.initial_rel_offnorm = detail::rel_offnorm_cached(w, wnorm2);
    res.status = SolverStatus::CycleCapReached;

    Matrix lam;
    double lam_norm = 0.0;
    bool lam_valid = false;

    const std::size_t diag_step = w.diag_stride();

    for (int cycle = 1; cycle <= cfg.max_cycles; ++cycle) {
        const double tr_start = tr;
        long long applied_in_cycle = 0;
        long long degenerate_in_cycle = 0;
        int micro_index = 0;
        std::vector<long long> hist(2, 0);

        for (int i = 0; i < n - 1; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (!lam_valid) {
                    lam = lambda_fast_sym(w);
                    lam_norm = spectral_norm(lam);
                    lam_valid = true;
                }
                const double lam_ij = lam(i, j);
                const double gate_norm = lam_norm;
                bool applied = false;
                if (pivot_admissible_given_norm(lam_ij, gate_norm, n, cfg.eta)) {
                    const SymSubproblem sub = extract_sym_subproblem(w, i, j);
                    std::optional<RotationCoeffs> rot;
                    if (variant == SymVariant::Full) {
                        rot = best_sym_angle(sub);
                    } else {
                        rot = mode1_angle(sub);
                    }
                    if (!rot) {
                        ++res.degenerate_skips;
                        ++degenerate_in_cycle;
                    } else {
                        const double pair_before = w[static_cast<std::size_t>(i) * diag_step] +
                                                   w[static_cast<std::size_t>(j) * diag_step];
                        for (int l = 0; l < d; ++l) kernels::rotate_mode_pair(w.raw(), n, d, l, i, j, rot->c, rot->s);
                        post_multiply_rotation(u, PlaneRotation{i, j, rot->c, rot->s});
                        tr += gs_value(sub, rot->c, rot->s) - pair_before;
                        lam_valid = false;
                        applied = true;
                        ++applied_in_cycle;
                    }
                }
                res.telemetry.push_back(TraceRecord{cycle, micro_index++, i, j, -1, applied, tr,
                                                    detail::rel_offnorm_cached(w, wnorm2),
                                                    2.0 * std::abs(lam_ij), gate_norm});
                ++hist[applied ? 1 : 0];
            }
        }

        wnorm2 = kernels::sum_squares(w.raw(), w.size());
        tr = trace(w);
        res.cycles = cycle;
        res.micro_hist_per_cycle.push_back(std::move(hist));
        if (res.input_norm > 0.0) {
            const double drift = std::abs(std::sqrt(wnorm2) - res.input_norm) / res.input_norm;
            res.max_norm_drift = std::max(res.max_norm_drift, drift);
        }
        res.max_orthogonality_error = std::max(res.max_orthogonality_error, orthogonality_error(u));
        {
            const std::vector<Matrix> single{u};
            res.max_reconstruction_error =
                std::max(res.max_reconstruction_error, detail::reconstruction_error(w, single, a, res.input_norm));
        }
        res.max_symmetry_error = std::max(res.max_symmetry_error, symmetry_error(w));

        if (applied_in_cycle == 0 && degenerate_in_cycle > 0) {
            res.status = SolverStatus::DegenerateStall;
            res.diagnostic = "cycle " + std::to_string(cycle) + " applied no rotations and hit " +
                             std::to_string(degenerate_in_cycle) + " degenerate 0/0 trace pairs";
            break;
        }
        // periodic drift correction of the symmetric structure
        if (cycle % 10 == 0) {
            w = symmetrize(w);
            wnorm2 = kernels::sum_squares(w.raw(), w.size());
            tr = trace(w);
            lam_valid = false;
        }
        const double threshold = cfg.relative_tol ? cfg.tol * std::max(std::abs(tr), 1e-300) : cfg.tol;
        if (std::abs(tr - tr_start) < threshold) {
            res.converged = true;
            res.status = SolverStatus::Converged;
            break;
        }
    }

    res.core = std::move(w);
    res.factors.push_back(std::move(u));
    res.final_trace = tr;
    res.final_rel_offnorm = detail::rel_offnorm_cached(res.core, wnorm2);
    return res;
}

} // namespace tracemax
