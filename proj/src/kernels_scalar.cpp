// Scalar reference kernels. These define the semantics; the SIMD variants
// must agree with them to rounding.

#include "qnm/kernels.hpp"

namespace qnm::kernels::scalar {

void caxpy(cplx* y, cplx a, const cplx* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void caxpyc(cplx* y, cplx a, const cplx* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * std::conj(x[i]);
}

void cscal(cplx* y, cplx a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] *= a;
}

cplx cdotc(const cplx* x, const cplx* y, std::size_t n) {
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) s += std::conj(x[i]) * y[i];
    return s;
}

cplx cdotu(const cplx* x, const cplx* y, std::size_t n) {
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

void rank1_herm(cplx* c, double w, const cplx* v, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const cplx a = w * v[i];
        caxpyc(c + i * n, a, v, n);
    }
}

void rank1(cplx* c, cplx w, const cplx* u, const cplx* v, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const cplx a = w * u[i];
        caxpyc(c + i * n, a, v, n);
    }
}

void diag_axpy(cplx* y, cplx a, const double* d, const cplx* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * d[i] * x[i];
}

}  // namespace qnm::kernels::scalar
