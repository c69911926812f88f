#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tracemax/matrix.hpp"

namespace tracemax {

// Plane rotation R(i,j,phi): identity except R(i,i)=c, R(i,j)=-s, R(j,i)=s,
// R(j,j)=c, with 0 <= i < j and c^2 + s^2 = 1.
struct PlaneRotation {
    int i = 0;
    int j = 1;
    double c = 1.0;
    double s = 0.0;
};

struct RotationCoeffs {
    double c;
    double s;
};

// Optimal single-mode trace rotation from the diagonal pair sum
// D = w(p..p) + w(q..q) and the off pair difference N, both read before the
// rotation. Returns (c, s) = (D, N) / hypot(D, N), the unique choice that
// maximizes c*D + s*N; nullopt signals the degenerate 0/0 case.
std::optional<RotationCoeffs> rotation_from_trace_pair(double d_sum, double n_diff);

// M <- R^T M (rows i and j combined, everything else untouched).
void apply_rotation_left(Matrix& m, const PlaneRotation& rot);

// U <- U R (columns i and j combined).
void post_multiply_rotation(Matrix& u, const PlaneRotation& rot);

struct QrResult {
    Matrix q;
    Matrix r;
};

// Householder QR of a square matrix, sign-normalized so diag(R) >= 0.
QrResult householder_qr(const Matrix& m);

struct SymEigenResult {
    std::vector<double> values; // descending
    Matrix vectors;             // columns, same order; largest-|entry| component positive
};

// Cyclic Jacobi eigensolver for a symmetric matrix. Ties in the descending
// sort keep the original diagonal order; each eigenvector is sign-fixed so
// its largest-magnitude entry is positive (first such entry on exact ties).
SymEigenResult sym_eigen(const Matrix& s);

// Eigenvalues only (skips accumulating the vectors).
std::vector<double> sym_eigen_values(const Matrix& s);

// Largest singular value, via the top eigenvalue of M^T M.
double spectral_norm(const Matrix& m);

// All real roots of c[0] t^deg + ... + c[deg], deg <= 4. Closed-form seeds
// (quadratic/Cardano/Ferrari) polished by Newton steps on the input
// polynomial; roots closer than 1e-8 are merged; candidates whose residual
// exceeds 1e-10 * (1 + max|c| (1+|t|)^deg) are dropped. A zero polynomial
// throws std::domain_error; a zero leading coefficient degrades the degree.
std::vector<double> real_roots(const std::vector<double>& coeffs);

} // namespace tracemax
