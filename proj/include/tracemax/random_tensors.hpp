#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "tracemax/matrix.hpp"
#include "tracemax/tensor.hpp"

namespace tracemax {

// Seeded stream with fully pinned-down output: mt19937_64 is specified by
// the standard, and the uniform / gaussian transforms below avoid the
// implementation-defined std:: distributions, so equal seeds give bit-equal
// tensors on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01()
    {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double gaussian(); // Box-Muller pair, second value cached

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// QR of an iid standard-normal matrix with diag(R) >= 0 folded in, i.e.
// Haar-distributed over the full orthogonal group.
Matrix random_orthogonal(int n, Rng& rng);

struct DiagonalizableTensor {
    DenseTensor tensor;
    std::vector<double> true_diagonal;
};

struct SymDiagonalizableTensor {
    DenseTensor tensor;
    std::vector<double> true_diagonal;
    Matrix q;
};

// Entries iid uniform on [0,1], filled in flat-buffer order.
DenseTensor gen_uniform(int d, int n, std::uint64_t seed);

// diag(D) iid uniform on [diag_lo, diag_hi]; tensor = D x_1 Q_1 ... x_d Q_d
// with independent random orthogonal factors.
DiagonalizableTensor gen_orth_diagonalizable(int d, int n, std::uint64_t seed,
                                             double diag_lo = 0.0, double diag_hi = 1.0);

// Same with a single Q applied in every mode; output is symmetric.
SymDiagonalizableTensor gen_sym_diagonalizable(int d, int n, std::uint64_t seed,
                                               double diag_lo = 0.0, double diag_hi = 1.0);

// Full antisymmetrization (1/d! sum of signed permutations) of a uniform
// tensor. Values are computed once per strictly-increasing index combination
// and copied with the permutation sign, so entries with any repeated index
// are exactly zero and antisymmetry holds bit-exactly.
DenseTensor gen_antisymmetric(int d, int n, std::uint64_t seed);

} // namespace tracemax
