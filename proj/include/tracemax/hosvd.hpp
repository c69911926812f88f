#pragma once

#include <vector>

#include "tracemax/matrix.hpp"
#include "tracemax/tensor.hpp"

namespace tracemax {

struct HosvdResult {
    std::vector<Matrix> factors;   // one orthogonal n x n factor per mode
    DenseTensor preconditioned;    // A x_1 U_1^T ... x_d U_d^T
};

// Factors are the eigenvector matrices of the per-mode Gram matrices
// A_(l) A_(l)^T, eigenvalues descending (= the left singular vectors of the
// matricizations). Deterministic for fixed input through the sym_eigen
// ordering and sign conventions.
HosvdResult hosvd(const DenseTensor& a);

} // namespace tracemax
