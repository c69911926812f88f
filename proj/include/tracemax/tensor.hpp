#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tracemax/matrix.hpp"

namespace tracemax {

std::size_t pow_size(int n, int d);

// Dense order-d cubical real tensor, all d modes of dimension n.
//
// Storage layout (fixed, file format depends on it): flat buffer in
// generalized column-major order, the flat offset of the 0-based
// multi-index (i_0, ..., i_{d-1}) is sum_m i_m * n^m. The first index
// varies fastest, so mode-0 fibers are contiguous.
//
// The mode-l matricization is the n x n^{d-1} matrix whose columns are
// the mode-l fibers; column c enumerates the remaining indices
// lexicographically with the lowest remaining mode fastest, i.e.
// c = lo + hi * n^l where lo packs the modes below l and hi the modes
// above l. No tensor op materializes it unless asked to.
class DenseTensor {
public:
    DenseTensor() = default;
    DenseTensor(int order, int dim);

    static DenseTensor from_data(int order, int dim, std::vector<double> data);

    int order() const { return order_; }
    int dim() const { return dim_; }
    std::size_t size() const { return data_.size(); }

    double operator[](std::size_t flat) const { return data_[flat]; }
    double& operator[](std::size_t flat) { return data_[flat]; }

    std::span<const double> data() const { return data_; }
    std::span<double> data() { return data_; }
    const double* raw() const { return data_.data(); }
    double* raw() { return data_.data(); }

    // Bounds-checked element access; throws std::out_of_range on a bad index.
    double at(std::span<const int> idx) const;
    void set(std::span<const int> idx, double value);

    std::size_t flat_index(std::span<const int> idx) const; // unchecked
    std::size_t mode_stride(int mode) const;                // n^mode
    std::size_t diag_stride() const;                        // offset step between consecutive (r,...,r)
    double diag_entry(int r) const { return data_[static_cast<std::size_t>(r) * diag_stride()]; }

private:
    int order_ = 0;
    int dim_ = 0;
    std::vector<double> data_;
};

Matrix matricize(const DenseTensor& t, int mode);
DenseTensor dematricize(const Matrix& m, int order, int dim, int mode);

// Result's mode-`mode` matricization equals X * matricize(t, mode).
DenseTensor mode_product(const DenseTensor& t, const Matrix& x, int mode);

double trace(const DenseTensor& t);
double inner_product(const DenseTensor& a, const DenseTensor& b);
double frobenius_norm(const DenseTensor& t);
double off_norm(const DenseTensor& t);
// off_norm / frobenius_norm; throws std::domain_error on the zero tensor.
double relative_off_norm(const DenseTensor& t);

// D(t, r) = T at the index that is r in every mode except `mode`, where it is t.
Matrix diagonal_fiber_matrix(const DenseTensor& t, int mode);

bool is_symmetric(const DenseTensor& t, double tol = 1e-12);
bool is_antisymmetric(const DenseTensor& t, double tol = 1e-12);

// Largest |T[idx] - T[swapped idx]| over all entries and index-pair swaps.
double symmetry_error(const DenseTensor& t);

// Average over all index permutations.
DenseTensor symmetrize(const DenseTensor& t);

// Text format: first line "TNS <d> <n>", then n^d values in flat-buffer
// order, one per line, 17 significant digits.
void write_tns(const DenseTensor& t, std::ostream& os);
void write_tns_file(const DenseTensor& t, const std::string& path);
DenseTensor read_tns(std::istream& is);
DenseTensor read_tns_file(const std::string& path);

} // namespace tracemax
