#pragma once
// Density matrices and pure states.

#include "qnm/cmat.hpp"
#include "qnm/rng.hpp"

namespace qnm {

struct State {
    CMat rho;
    bool pure = false;

    std::size_t dim() const { return rho.rows(); }

    static State from_pure(const CVec& psi);
    static State plus();        // |+><+|
    static State excited();     // |0><0| (upper sigma_z level)
    static State ground();      // |1><1|

    // Hermitian, unit trace, eigenvalues >= -tol.
    void validate(double tol = 1e-12) const;
};

double trace_distance(const CMat& a, const CMat& b);

// Fidelity <psi| rho |psi> of a state against a pure reference.
double fidelity_pure(const CVec& psi, const CMat& rho);

CVec random_pure_state(Rng& rng, std::size_t dim);
CMat random_density(Rng& rng, std::size_t dim);

}  // namespace qnm
