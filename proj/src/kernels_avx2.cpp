#include "gacz/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

// AVX2+FMA complex-double kernels. std::complex<double> arrays are
// interleaved (re,im), so one __m256d holds two complex numbers. Complex
// products use the movedup/permute + addsub pattern:
//   v*x: t1 = v * [xr,xr], t2 = swap(v) * [xi,xi], addsub(t1,t2).
// Only this translation unit is compiled with AVX2 codegen (via the target
// attribute) so the binary stays runnable on baseline x86-64; dispatch in
// kernels.cpp checks cpuid before routing here.

#define GACZ_AVX2 __attribute__((target("avx2,fma")))

namespace gacz {
namespace {

GACZ_AVX2 inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

GACZ_AVX2 void spmv(const Csr& a, const cplx* x, cplx* y) {
    const double* vals = reinterpret_cast<const double*>(a.val.data());
    const double* xs = reinterpret_cast<const double*>(x);
    for (int i = 0; i < a.n; ++i) {
        const int b = a.ptr[i], e = a.ptr[i + 1];
        __m256d acc = _mm256_setzero_pd();
        int p = b;
        for (; p + 2 <= e; p += 2) {
            __m256d v = _mm256_loadu_pd(vals + 2 * static_cast<std::size_t>(p));
            __m128d x0 = _mm_loadu_pd(xs + 2 * static_cast<std::size_t>(a.col[p]));
            __m128d x1 = _mm_loadu_pd(xs + 2 * static_cast<std::size_t>(a.col[p + 1]));
            __m256d xv = _mm256_set_m128d(x1, x0);
            __m256d xr = _mm256_movedup_pd(xv);        // [xr0,xr0,xr1,xr1]
            __m256d xi = _mm256_permute_pd(xv, 0xF);   // [xi0,xi0,xi1,xi1]
            __m256d vs = _mm256_permute_pd(v, 0x5);    // swap re<->im
            acc = _mm256_add_pd(acc, _mm256_addsub_pd(_mm256_mul_pd(v, xr),
                                                      _mm256_mul_pd(vs, xi)));
        }
        __m128d r = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
        cplx tail = 0.0;
        for (; p < e; ++p) tail += a.val[p] * x[a.col[p]];
        alignas(16) double out[2];
        _mm_store_pd(out, r);
        y[i] = cplx(out[0], out[1]) + tail;
    }
}

GACZ_AVX2 void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    const double* xs = reinterpret_cast<const double*>(x);
    double* ys = reinterpret_cast<double*>(y);
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(xs + 2 * i);
        __m256d vs = _mm256_permute_pd(v, 0x5);
        __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(v, ar), _mm256_mul_pd(vs, ai));
        _mm256_storeu_pd(ys + 2 * i, _mm256_add_pd(_mm256_loadu_pd(ys + 2 * i), prod));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

GACZ_AVX2 cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
    const double* xs = reinterpret_cast<const double*>(x);
    const double* ys = reinterpret_cast<const double*>(y);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xs + 2 * i);
        __m256d yv = _mm256_loadu_pd(ys + 2 * i);
        // Re += xr*yr + xi*yi (all lanes summed)
        acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
        // addsub accumulates [-xr*yi, +xi*yr, ...]; Im = -hsum
        acc_im = _mm256_addsub_pd(acc_im, _mm256_mul_pd(xv, _mm256_permute_pd(yv, 0x5)));
    }
    cplx acc(hsum(acc_re), -hsum(acc_im));
    for (; i < n; ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

GACZ_AVX2 double nrm2sq(std::size_t n, const cplx* x) {
    const double* xs = reinterpret_cast<const double*>(x);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(xs + 2 * i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += std::norm(x[i]);
    return s;
}

GACZ_AVX2 void scal(std::size_t n, cplx alpha, cplx* x) {
    double* xs = reinterpret_cast<double*>(x);
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(xs + 2 * i);
        __m256d vs = _mm256_permute_pd(v, 0x5);
        _mm256_storeu_pd(xs + 2 * i,
                         _mm256_addsub_pd(_mm256_mul_pd(v, ar), _mm256_mul_pd(vs, ai)));
    }
    for (; i < n; ++i) x[i] *= alpha;
}

} // namespace

const Kernels kernels_avx2 = {"avx2", spmv, axpy, dotc, nrm2sq, scal};

} // namespace gacz

#else  // non-x86 build: keep the symbol, route to scalar

namespace gacz {
const Kernels kernels_avx2 = {"avx2", kernels_scalar.spmv, kernels_scalar.axpy,
                              kernels_scalar.dotc, kernels_scalar.nrm2sq,
                              kernels_scalar.scal};
} // namespace gacz

#endif
