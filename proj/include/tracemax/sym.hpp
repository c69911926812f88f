#pragma once

#include <optional>
#include <vector>

#include "tracemax/linalg.hpp"
#include "tracemax/tensor.hpp"

namespace tracemax {

// The 2 x 2 x ... x 2 subtensor of a symmetric working tensor at pivot
// (p, q), relabeled so bit m of the entry mask is 0 for index p and 1 for
// index q at mode m.
struct SymSubproblem {
    int order = 0;
    std::vector<double> entries; // 2^order values

    double at_mask(unsigned mask) const { return entries[mask]; }
    unsigned full_mask() const { return (1u << order) - 1u; }
};

SymSubproblem extract_sym_subproblem(const DenseTensor& w, int p, int q);

// Post-rotation diagonal pair sum after applying the same (c, s) rotation in
// every mode of the subproblem; evaluated by explicitly rotating the 2^d
// block (O(d 2^d)).
double gs_value(const SymSubproblem& sub, double c, double s);

// Coefficients (descending powers of t = tan phi) of the stationarity
// polynomial g_s'(phi) / cos^d(phi) = 0. Supported for order 3 and 4; the
// quartic coefficients come from differentiating the closed form of g_s and
// are pinned by a derivative-residual test.
std::vector<double> angle_poly_coeffs(const SymSubproblem& sub);

// Angle maximizing g_s. Candidates: every real root of the stationarity
// polynomial (both sign branches), the quarter turns (0, +-1) lost when
// dividing by cos^d, and the identity (1, 0) which makes the result never
// worse than no rotation. Orders above 4 fall back to a coarse scan plus
// golden-section refinement.
RotationCoeffs best_sym_angle(const SymSubproblem& sub);

// Single-mode optimal angle (the ALS formula read off mode 0), to be applied
// in all modes by the caller; nullopt on the degenerate 0/0 pair.
std::optional<RotationCoeffs> mode1_angle(const SymSubproblem& sub);

} // namespace tracemax
