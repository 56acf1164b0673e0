#include "gacz/kernels.hpp"

// Reference kernels. Deliberately plain loops: these define the semantics
// the SIMD variants are tested against.

namespace gacz {
namespace {

void spmv(const Csr& a, const cplx* x, cplx* y) {
    for (int i = 0; i < a.n; ++i) {
        cplx acc = 0.0;
        for (int p = a.ptr[i]; p < a.ptr[i + 1]; ++p) acc += a.val[p] * x[a.col[p]];
        y[i] = acc;
    }
}

void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

double nrm2sq(std::size_t n, const cplx* x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::norm(x[i]);
    return acc;
}

void scal(std::size_t n, cplx alpha, cplx* x) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

} // namespace

const Kernels kernels_scalar = {"scalar", spmv, axpy, dotc, nrm2sq, scal};

} // namespace gacz
