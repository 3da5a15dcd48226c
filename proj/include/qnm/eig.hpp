#pragma once
// Hermitian eigenproblems via cyclic complex Jacobi. Dimensions here are
// small (Choi matrices top out at 256), where Jacobi is accurate and simple.

#include "qnm/cmat.hpp"

namespace qnm {

struct EigH {
    std::vector<double> vals;  // ascending
    CMat vecs;                 // columns; M = V diag(vals) V^dag
};

EigH eig_hermitian(const CMat& m, double tol = 1e-14, int max_sweeps = 100);

double min_eig_hermitian(const CMat& m);

// V diag(exp(factor * lambda)) V^dag; unitary by construction for imaginary factor.
CMat expm_hermitian(const CMat& h, cplx factor);

}  // namespace qnm
