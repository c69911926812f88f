#pragma once

#include <vector>

#include "tracemax/matrix.hpp"
#include "tracemax/solver.hpp"
#include "tracemax/tensor.hpp"

namespace tracemax::detail {

void validate_config(SolverConfig& cfg, int n);
double diag_square_sum(const DenseTensor& w);
double rel_offnorm_cached(const DenseTensor& w, double wnorm2);
// Multiplies w back through the factors (cycled when a single U serves all
// modes) and returns the relative residual against a.
double reconstruction_error(const DenseTensor& w, const std::vector<Matrix>& factors, const DenseTensor& a,
                            double input_norm);

} // namespace tracemax::detail
