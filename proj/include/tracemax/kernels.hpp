#pragma once

#include <cstddef>

namespace tracemax::kernels {

// Data-parallel inner loops shared by the tensor ops and the solvers.
// All kernels take the flat tensor buffer in first-index-fastest order
// (flat offset of (i_0,...,i_{d-1}) is sum_m i_m * n^m).
//
// The production kernels are OpenMP-parallel when built with OpenMP and
// produce bitwise identical results for any thread count: element-wise
// kernels have independent outputs, and reductions accumulate fixed-size
// chunks that are combined in chunk order. The kernels::serial namespace
// holds the plain-loop reference implementations used by the unit tests
// and the benchmark.

// out_(mode) = X * in_(mode); X is n x n row-major, out and in must not alias.
void mode_product(const double* in, double* out, const double* x, int n, int d, int mode);

// In-place two-row rotation of the mode-`mode` matricization:
//   row_i <-  c*row_i + s*row_j
//   row_j <- -s*row_i + c*row_j
// i.e. the matricization is multiplied from the left by R(i,j,phi)^T.
void rotate_mode_pair(double* data, int n, int d, int mode, int i, int j, double c, double s);

// g = A_(mode) * A_(mode)^T, an n x n row-major Gram matrix.
void gram_mode(const double* data, double* g, int n, int d, int mode);

double sum_squares(const double* x, std::size_t len);
double dot(const double* x, const double* y, std::size_t len);

namespace serial {

void mode_product(const double* in, double* out, const double* x, int n, int d, int mode);
void rotate_mode_pair(double* data, int n, int d, int mode, int i, int j, double c, double s);
void gram_mode(const double* data, double* g, int n, int d, int mode);
double sum_squares(const double* x, std::size_t len);
double dot(const double* x, const double* y, std::size_t len);

} // namespace serial

} // namespace tracemax::kernels
