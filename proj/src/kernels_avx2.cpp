// AVX2+FMA kernel variants. Complex numbers are interleaved (re, im);
// one __m256d holds two complex values. Only ever called after the runtime
// cpuid check in kernels_dispatch.cpp.

#include "kernels_internal.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace qnm::kernels {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// Sign masks: flip imaginary (odd) or real (even) lanes.
inline __m256d mask_odd() { return _mm256_set_pd(-0.0, 0.0, -0.0, 0.0); }
inline __m256d mask_even() { return _mm256_set_pd(0.0, -0.0, 0.0, -0.0); }

// y += a*x on two complex lanes: even = ar*xr - ai*xi, odd = ar*xi + ai*xr.
inline __m256d cmadd(__m256d y, __m256d x, __m256d ar, __m256d ai) {
    __m256d xs = _mm256_permute_pd(x, 0x5);
    return _mm256_add_pd(y, _mm256_fmaddsub_pd(x, ar, _mm256_mul_pd(xs, ai)));
}

void caxpy(cplx* y, cplx a, const cplx* x, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    double* yd = reinterpret_cast<double*>(y);
    const double* xd = reinterpret_cast<const double*>(x);
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        _mm256_storeu_pd(yd + 2 * i, cmadd(yv, xv, ar, ai));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void caxpyc(cplx* y, cplx a, const cplx* x, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    const __m256d conj_mask = mask_odd();
    std::size_t i = 0;
    double* yd = reinterpret_cast<double*>(y);
    const double* xd = reinterpret_cast<const double*>(x);
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_xor_pd(_mm256_loadu_pd(xd + 2 * i), conj_mask);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        _mm256_storeu_pd(yd + 2 * i, cmadd(yv, xv, ar, ai));
    }
    for (; i < n; ++i) y[i] += a * std::conj(x[i]);
}

void cscal(cplx* y, cplx a, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    double* yd = reinterpret_cast<double*>(y);
    for (; i + 2 <= n; i += 2) {
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        __m256d ys = _mm256_permute_pd(yv, 0x5);
        _mm256_storeu_pd(yd + 2 * i, _mm256_fmaddsub_pd(yv, ar, _mm256_mul_pd(ys, ai)));
    }
    for (; i < n; ++i) y[i] *= a;
}

cplx cdotc(const cplx* x, const cplx* y, std::size_t n) {
    __m256d acc_r = _mm256_setzero_pd();
    __m256d acc_i = _mm256_setzero_pd();
    const __m256d even_flip = mask_even();
    std::size_t i = 0;
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        acc_r = _mm256_fmadd_pd(xv, yv, acc_r);
        __m256d xs = _mm256_xor_pd(_mm256_permute_pd(xv, 0x5), even_flip);
        acc_i = _mm256_fmadd_pd(xs, yv, acc_i);
    }
    cplx s{hsum(acc_r), hsum(acc_i)};
    for (; i < n; ++i) s += std::conj(x[i]) * y[i];
    return s;
}

cplx cdotu(const cplx* x, const cplx* y, std::size_t n) {
    __m256d acc_r = _mm256_setzero_pd();
    __m256d acc_i = _mm256_setzero_pd();
    const __m256d odd_flip = mask_odd();
    std::size_t i = 0;
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        acc_r = _mm256_fmadd_pd(_mm256_xor_pd(xv, odd_flip), yv, acc_r);
        acc_i = _mm256_fmadd_pd(_mm256_permute_pd(xv, 0x5), yv, acc_i);
    }
    cplx s{hsum(acc_r), hsum(acc_i)};
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

void rank1_herm(cplx* c, double w, const cplx* v, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) caxpyc(c + i * n, w * v[i], v, n);
}

void rank1(cplx* c, cplx w, const cplx* u, const cplx* v, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) caxpyc(c + i * n, w * u[i], v, n);
}

void diag_axpy(cplx* y, cplx a, const double* d, const cplx* x, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    double* yd = reinterpret_cast<double*>(y);
    const double* xd = reinterpret_cast<const double*>(x);
    for (; i + 2 <= n; i += 2) {
        __m128d dd = _mm_loadu_pd(d + i);
        __m256d dv = _mm256_set_m128d(_mm_unpackhi_pd(dd, dd), _mm_unpacklo_pd(dd, dd));
        __m256d t = _mm256_mul_pd(dv, _mm256_loadu_pd(xd + 2 * i));
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        _mm256_storeu_pd(yd + 2 * i, cmadd(yv, t, ar, ai));
    }
    for (; i < n; ++i) y[i] += a * d[i] * x[i];
}

const KernelTable table = {caxpy, caxpyc, cscal, cdotc, cdotu, rank1_herm, rank1, diag_axpy};

}  // namespace

namespace detail {
const KernelTable* avx2_table() { return &table; }
}

}  // namespace qnm::kernels

#else

namespace qnm::kernels::detail {
const KernelTable* avx2_table() { return nullptr; }
}

#endif
