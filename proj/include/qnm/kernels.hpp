#pragma once
// Complex arithmetic kernels used by the hot loops (windowed Fourier sums,
// Choi rank-1 accumulation, Lanczos stepping). Scalar reference versions and
// AVX2 variants; the active set is chosen once at startup from cpuid.

#include <complex>
#include <cstddef>

namespace qnm::kernels {

using cplx = std::complex<double>;

struct KernelTable {
    void (*caxpy)(cplx* y, cplx a, const cplx* x, std::size_t n);
    void (*caxpyc)(cplx* y, cplx a, const cplx* x, std::size_t n);  // y += a*conj(x)
    void (*cscal)(cplx* y, cplx a, std::size_t n);
    cplx (*cdotc)(const cplx* x, const cplx* y, std::size_t n);     // sum conj(x)*y
    cplx (*cdotu)(const cplx* x, const cplx* y, std::size_t n);     // sum x*y
    void (*rank1_herm)(cplx* c, double w, const cplx* v, std::size_t n);
    void (*rank1)(cplx* c, cplx w, const cplx* u, const cplx* v, std::size_t n);
    void (*diag_axpy)(cplx* y, cplx a, const double* d, const cplx* x, std::size_t n);
};

namespace detail {
extern const KernelTable scalar_table;
extern const KernelTable* active;
}

// Active-kernel entry points.
inline void caxpy(cplx* y, cplx a, const cplx* x, std::size_t n) { detail::active->caxpy(y, a, x, n); }
inline void caxpyc(cplx* y, cplx a, const cplx* x, std::size_t n) { detail::active->caxpyc(y, a, x, n); }
inline void cscal(cplx* y, cplx a, std::size_t n) { detail::active->cscal(y, a, n); }
inline cplx cdotc(const cplx* x, const cplx* y, std::size_t n) { return detail::active->cdotc(x, y, n); }
inline cplx cdotu(const cplx* x, const cplx* y, std::size_t n) { return detail::active->cdotu(x, y, n); }
// C (row-major n x n) += w * v v^dag, w real
inline void rank1_herm(cplx* c, double w, const cplx* v, std::size_t n) { detail::active->rank1_herm(c, w, v, n); }
// C += w * u v^dag
inline void rank1(cplx* c, cplx w, const cplx* u, const cplx* v, std::size_t n) { detail::active->rank1(c, w, u, v, n); }
// y_i += a * d_i * x_i, d real
inline void diag_axpy(cplx* y, cplx a, const double* d, const cplx* x, std::size_t n) { detail::active->diag_axpy(y, a, d, x, n); }

// Scalar reference entry points (for equivalence tests).
namespace scalar {
void caxpy(cplx* y, cplx a, const cplx* x, std::size_t n);
void caxpyc(cplx* y, cplx a, const cplx* x, std::size_t n);
void cscal(cplx* y, cplx a, std::size_t n);
cplx cdotc(const cplx* x, const cplx* y, std::size_t n);
cplx cdotu(const cplx* x, const cplx* y, std::size_t n);
void rank1_herm(cplx* c, double w, const cplx* v, std::size_t n);
void rank1(cplx* c, cplx w, const cplx* u, const cplx* v, std::size_t n);
void diag_axpy(cplx* y, cplx a, const double* d, const cplx* x, std::size_t n);
}

// Name of the instruction set in use ("avx2" or "scalar").
const char* active_isa();
// Force the scalar table (tests); returns the previous ISA name.
const char* force_scalar(bool on);

}  // namespace qnm::kernels
