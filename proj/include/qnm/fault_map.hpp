#pragma once
// The non-Markovian fault generator Upsilon_t, its qubit-locality profile,
// and the kicked-dynamics discrete error maps r_jk.

#include "qnm/error_map.hpp"
#include "qnm/propagator.hpp"
#include "qnm/reservoir.hpp"

namespace qnm {

struct FaultTerm {
    std::size_t alpha, beta;
    CMat upsilon;  // Upsilon_ab = Int_s^t du C_ab(u-t) S_b(u,t)
};

// Generator L_t rho = Sum_ab (Ups_ab rho S_a + S_b rho Ups_ab^dag)
//                     - 1/2 {Ups*(1), rho}; trace-annihilating by construction.
struct FaultGenerator {
    double t = 0.0;
    double eps = 0.0;  // kernel regulator used (reported with results)
    std::vector<CMat> couplings;  // S_alpha
    std::vector<FaultTerm> terms;

    CMat dual_identity() const;          // Ups*(1)
    CMat apply(const CMat& rho) const;   // L_t rho
};

// Quadrature of the kernel-weighted backward-propagated couplings over [s,t].
// Delta kernels short-circuit to Upsilon_aa = (weight/2) S_a.
FaultGenerator fault_generator(const Couplings& c, const Propagator& p, double s, double t,
                               double eps, int panels = 48, int gl_order = 10);

// weight[k] = squared Pauli-coefficient mass of the generator supported on
// exactly k qubits (joint support of the (Upsilon_ab, S_a) pair).
struct LocalityProfile {
    std::vector<double> weight;  // index 0 unused; k = 1..n
    double total() const;
};

LocalityProfile locality_profile(const FaultGenerator& g, int nqubits);

struct KickedErrorMap {
    double tau = 0.0;
    int steps = 0;
    std::size_t dim = 0;
    std::vector<std::vector<CMat>> propagated;  // [alpha][j]: S^j = U_j^dag S U_j
    std::vector<CMat> r;                        // N x N coefficient matrix per coupling

    SecondOrderMap to_map() const;
    // min over couplings of lambda_min(r) / tr(r).
    double min_r_eig_rel() const;
};

// r_jk = double integral of the kernel over step intervals; diagonal
// reservoirs only (R_ab = R_a delta_ab).
KickedErrorMap kicked_error_map(const std::vector<CMat>& step_generators,
                                const std::vector<CMat>& couplings,
                                const ReservoirModel& bath, double tau, int steps,
                                double eps, int gl_order = 12);

// ||offdiagonal r||_1 / ||r||_1 (entrywise): fraction of the map carried by
// error-path interference.
double interference_contrast(const KickedErrorMap& m);

// CSV exports (header row of indices; complex values as re,im pairs).
void save_r_matrix(const KickedErrorMap& m, std::size_t alpha, std::ostream& out);
void save_locality_profile(const LocalityProfile& p, std::ostream& out);

}  // namespace qnm
