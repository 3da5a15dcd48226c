#pragma once
// Time-ordered controlled evolution U_C(t,s), Heisenberg-picture couplings,
// Bohr-frequency decompositions and windowed Fourier transforms.

#include <map>
#include <string>

#include "qnm/cmat.hpp"
#include "qnm/quadrature.hpp"
#include "qnm/schedule.hpp"

namespace qnm {

struct PropagatorDiagnostics {
    std::vector<std::string> warnings;
    double richardson_defect = 0.0;
};

class Propagator {
public:
    // Builds cached unitaries U(node_k, t0) on a uniform grid of step dt
    // (midpoint exponential per step; exact factors at kick times).
    // dt <= 0 picks a step from the schedule's norm scale.
    explicit Propagator(Schedule sched, double dt = 0.0, bool richardson_check = true);

    const Schedule& schedule() const { return sched_; }
    double dt() const { return dt_; }
    const PropagatorDiagnostics& diagnostics() const { return diag_; }

    // U(to, from): evolution from `from` to `to`. Reversed arguments return
    // the adjoint.
    CMat unitary(double from, double to) const;

    // U(u,s)^dag S U(u,s): the coupling in the Heisenberg picture of the
    // controlled evolution started at s. Works for u < s (backward).
    CMat heisenberg(const CMat& s_op, double u, double s) const;

    // Single midpoint step (kicks applied when crossed); used by the
    // windowed-transform caches for sequential grid sweeps.
    CMat step_matrix(double a, double b) const;

private:
    CMat smooth_step(double a, double b) const;
    Schedule sched_;
    double dt_;
    std::vector<CMat> cache_;  // U(t0 + k dt, t0)
    PropagatorDiagnostics diag_;
};

struct FrequencyDecomposition {
    std::vector<double> levels;      // eigenvalues of H
    std::vector<double> freqs;       // Bohr frequencies omega_k (sorted)
    std::vector<CMat> components;    // S(omega_k), same order as freqs
    double gap = 0.0;                // min nonzero level difference
    const CMat& at(double omega, double tol) const;
};

// Buckets the matrix elements of S by Bohr frequency of Hermitian H.
// Degenerate levels merge into the omega = 0 bucket.
FrequencyDecomposition frequency_components(const CMat& h, const CMat& s,
                                            double tol_scale = 1e-9);

// Cached Heisenberg-picture coupling S(u,s) (or its time derivative) on a
// quadrature grid over [s,t]; evaluates windowed Fourier transforms.
class WindowedCoupling {
public:
    // max_abs_omega sets the time resolution (node spacing < 0.1/max|omega|).
    // user_dt > 0 requests an explicit node spacing; rejected if too coarse.
    // adiabatic_eps > 0 applies the switching factor e^{-eps |u - mid|}.
    WindowedCoupling(const Propagator& p, const CMat& s_op, double s, double t,
                     double max_abs_omega, bool derivative = false, double user_dt = 0.0,
                     double adiabatic_eps = 0.0);

    // Y(omega) = Int_s^t S(u,s) e^{-i omega u} du
    CMat transform(double omega) const;
    double window_start() const { return s_; }
    double window_end() const { return t_; }
    double time_norm2() const;  // Int ||S(u,s)||_F^2 du
    std::size_t nodes() const { return grid_.size(); }

private:
    double s_, t_;
    std::size_t dim_;
    QuadGrid grid_;
    std::vector<CVec> flat_;  // [entry][node]: S(u_node)(entry), transposed store
};

// The spec'd operation: Y for every omega on a grid symmetric about 0.
std::vector<CMat> spectral_function(const Propagator& p, const CMat& s_op, double s, double t,
                                    const std::vector<double>& omegas, double user_dt = 0.0);

}  // namespace qnm
