#include "tracemax/hosvd.hpp"

#include "tracemax/kernels.hpp"
#include "tracemax/linalg.hpp"

namespace tracemax {

HosvdResult hosvd(const DenseTensor& a)
{
    const int d = a.order();
    const int n = a.dim();
    HosvdResult res;
    res.factors.reserve(d);
    for (int l = 0; l < d; ++l) {
        Matrix gram(n, n);
        kernels::gram_mode(a.raw(), gram.data().data(), n, d, l);
        res.factors.push_back(sym_eigen(gram).vectors);
    }
    res.preconditioned = a;
    for (int l = 0; l < d; ++l) res.preconditioned = mode_product(res.preconditioned, transpose(res.factors[l]), l);
    return res;
}

} // namespace tracemax
