#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace gacz {

using cplx = std::complex<double>;

// Compressed sparse row, complex double. Column indices within a row are
// sorted; duplicate entries are merged at build time.
struct Csr {
    int n = 0;  // square
    std::vector<int> ptr;   // n+1
    std::vector<int> col;   // nnz
    std::vector<cplx> val;  // nnz

    std::size_t nnz() const { return col.size(); }
};

// Hot-loop primitives behind the Krylov propagator. Two implementations:
// a scalar reference and an AVX2+FMA variant, selected at runtime. The
// AVX2 build is confined to its own translation unit via target attributes,
// so the rest of the library compiles for the baseline ISA.
struct Kernels {
    const char* name;
    void (*spmv)(const Csr& a, const cplx* x, cplx* y);          // y = A x
    void (*axpy)(std::size_t n, cplx a, const cplx* x, cplx* y); // y += a x
    cplx (*dotc)(std::size_t n, const cplx* x, const cplx* y);   // sum conj(x)*y
    double (*nrm2sq)(std::size_t n, const cplx* x);              // sum |x|^2
    void (*scal)(std::size_t n, cplx a, cplx* x);                // x *= a
};

extern const Kernels kernels_scalar;
extern const Kernels kernels_avx2;  // valid to call only if avx2_supported()

bool avx2_supported();

// "auto" (default; AVX2 when the CPU has it), "scalar", or "avx2".
// The GACZ_KERNELS environment variable provides the initial selection.
// Throws config_error for unknown names or "avx2" on unsupported hardware.
void select_kernels(std::string_view mode);
const Kernels& active_kernels();

} // namespace gacz
