#pragma once

#include <vector>

#include "tracemax/matrix.hpp"
#include "tracemax/tensor.hpp"

namespace tracemax {

// Gradient machinery for the trace objectives on the orthogonal group.
// All Lambda matrices returned here are skew-symmetric by construction
// ((X - X^T)/2 is formed explicitly).

// Element-wise gradient of the extended objective
// f~(U_1..U_d) = tr(A x_1 U_1^T ... x_d U_d^T) with respect to U_mode:
// G(m, r) = (A x U^T in every mode but `mode`) at (r,..,r,m,r,..,r).
Matrix grad_tilde_mode(const DenseTensor& a, const std::vector<Matrix>& factors, int mode);

// Lambda(U) = (U^T G - G^T U) / 2, the tangent-space projection coefficient.
Matrix lambda_of(const Matrix& u, const Matrix& g);

// Shortcut evaluation on the current working tensor W = A x_1 U_1^T...x_d U_d^T:
// Lambda = (D - D^T)/2 with D the mode-`mode` diagonal fiber matrix of W.
// Agrees with lambda_of(U_mode, grad_tilde_mode(...)); the element-wise path
// is kept as the test oracle for this equivalence.
Matrix lambda_fast(const DenseTensor& w, int mode);

// Element-wise gradient of the symmetric extended objective
// f~_s(U) = tr(A x_1 U^T ... x_d U^T), A symmetric:
// G(m, r) = sum_k C(d,k) k U(m,r)^{k-1} T_k(m,r), where T_k contracts A over
// d-k trailing modes with the index value m excluded.
Matrix grad_tilde_sym(const DenseTensor& a, const Matrix& u);

// Symmetric-case shortcut on the working tensor: Lambda = d (D - D^T)/2.
Matrix lambda_fast_sym(const DenseTensor& w);

// Pivot gate 2|Lambda(i,j)| >= eta ||Lambda||_2, vacuously true underneath
// the stationarity floor 1e-13 * n. Requires 0 < eta <= 2/n.
bool pivot_admissible(const Matrix& lambda, int i, int j, double eta);

// Same predicate with the spectral norm already in hand.
bool pivot_admissible_given_norm(double lambda_ij, double lambda_norm, int n, double eta);

double stationarity_floor(int n);

} // namespace tracemax
