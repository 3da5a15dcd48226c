#include "qnm/state.hpp"

#include <cmath>

#include "qnm/eig.hpp"
#include "qnm/errors.hpp"

namespace qnm {

State State::from_pure(const CVec& psi) {
    State s;
    s.pure = true;
    const std::size_t d = psi.size();
    s.rho = CMat(d, d);
    kernels::rank1(s.rho.data(), 1.0, psi.data(), psi.data(), d);
    const double n2 = s.rho.trace().real();
    s.rho *= 1.0 / n2;
    return s;
}

State State::plus() {
    const double r = 1.0 / std::sqrt(2.0);
    return from_pure({r, r});
}

State State::excited() { return from_pure({1.0, 0.0}); }
State State::ground() { return from_pure({0.0, 1.0}); }

void State::validate(double tol) const {
    if (rho.hermiticity_defect() > tol)
        throw numeric_rejection("state: density matrix not Hermitian");
    if (std::abs(rho.trace() - cplx{1.0, 0.0}) > tol)
        throw numeric_rejection("state: trace != 1");
    if (min_eig_hermitian(rho) < -tol)
        throw numeric_rejection("state: negative eigenvalue beyond tolerance");
}

double trace_distance(const CMat& a, const CMat& b) {
    CMat d = a - b;
    d.hermitize();
    const EigH e = eig_hermitian(d);
    double s = 0.0;
    for (double v : e.vals) s += std::abs(v);
    return 0.5 * s;
}

double fidelity_pure(const CVec& psi, const CMat& rho) {
    const CVec rp = rho * psi;
    return inner(psi, rp).real();
}

CVec random_pure_state(Rng& rng, std::size_t dim) {
    CVec psi(dim);
    for (auto& z : psi) z = cplx(rng.gaussian(), rng.gaussian());
    const double n = norm(psi);
    for (auto& z : psi) z /= n;
    return psi;
}

CMat random_density(Rng& rng, std::size_t dim) {
    // G G^dag / tr, G Ginibre.
    CMat g(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g(i, j) = cplx(rng.gaussian(), rng.gaussian());
    CMat rho = g * g.adjoint();
    rho *= 1.0 / rho.trace().real();
    rho.hermitize();
    return rho;
}

}  // namespace qnm
