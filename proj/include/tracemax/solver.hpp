#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tracemax/matrix.hpp"
#include "tracemax/tensor.hpp"

namespace tracemax {

enum class InitStrategy { Identity, Hosvd };
enum class SymVariant { Full, Mode1 };
enum class SolverStatus { Converged, CycleCapReached, DegenerateStall };

struct SolverConfig {
    // Gate strength for the pivot condition 2|Lambda_ij| >= eta ||Lambda||_2.
    // Values <= 0 resolve to the default 1/(100 n) when the run starts;
    // otherwise eta must lie in (0, 2/n].
    double eta = 0.0;
    // Stop when the trace change over one full pivot cycle drops below tol
    // (absolute by default; relative to |trace| with relative_tol).
    double tol = 1e-4;
    bool relative_tol = false;
    int max_cycles = 200;
    InitStrategy init = InitStrategy::Identity;
    // Carried into telemetry for provenance; the solver itself is deterministic.
    std::uint64_t seed = 0;
};

// One row of per-microiteration telemetry. For the symmetric solver a row
// covers the single rotation applied in all modes at once (mode = -1).
struct TraceRecord {
    int cycle;             // 1-based
    int micro_index;       // 0-based position within the cycle
    int pivot_i, pivot_j;  // 0-based pivot pair, i < j
    int mode;              // 0-based mode, or -1 for an all-modes rotation
    bool applied;
    double trace;          // running trace after this microiteration
    double rel_offnorm;
    double lambda_pivot_abs2; // 2|Lambda(i,j)| at gate time
    double lambda_spec_norm;  // ||Lambda||_2 at gate time
};

struct DecompositionResult {
    DenseTensor core;            // final working tensor S
    std::vector<Matrix> factors; // U_1..U_d, or a single U for symmetric runs
    bool symmetric_run = false;

    bool converged = false;
    SolverStatus status = SolverStatus::CycleCapReached;
    std::string diagnostic;      // set when status == DegenerateStall
    int cycles = 0;
    long long degenerate_skips = 0;

    double input_norm = 0.0;
    double initial_trace = 0.0;
    double initial_rel_offnorm = 0.0;
    double final_trace = 0.0;
    double final_rel_offnorm = 0.0;

    // Maxima over all cycle boundaries.
    double max_norm_drift = 0.0;            // relative Frobenius-norm drift of W
    double max_orthogonality_error = 0.0;   // max_l ||U_l^T U_l - I||_F
    double max_reconstruction_error = 0.0;  // relative, W multiplied back against the input
    double max_symmetry_error = 0.0;        // symmetric runs only

    std::vector<TraceRecord> telemetry;
    // micro_hist_per_cycle[c][k] = iterations of cycle c+1 that applied k
    // microiterations (k ranges 0..d for ALS, 0..1 for the symmetric solver).
    std::vector<std::vector<long long>> micro_hist_per_cycle;
};

// Algorithm: cyclic-pivot ALS trace maximization over d independent
// orthogonal factors. Pivots sweep (0,1),(0,2),...,(n-2,n-1); each pivot
// visits every mode, gated per mode on the current working tensor. Requires
// order >= 3 (for matrices the trace is invariant under the conjugation).
DecompositionResult run_als(const DenseTensor& a, const SolverConfig& cfg);

// Symmetry-preserving variant: one rotation per pivot applied in all modes,
// identity initialization, single factor U. The Full variant maximizes the
// subproblem trace over the angle; Mode1 reuses the single-mode ALS angle.
DecompositionResult run_sym(const DenseTensor& a, const SolverConfig& cfg, SymVariant variant = SymVariant::Full);

// Recomputes Lambda on the final working tensor and returns the largest
// spectral norm over modes (the symmetric Lambda for symmetric runs).
double stationarity_check(const DecompositionResult& result);

} // namespace tracemax
