#pragma once
// Exact reference dynamics: system + discretized bosonic modes in truncated
// Fock space, used to validate the perturbative maps at small lambda.

#include <vector>

#include "qnm/reservoir.hpp"
#include "qnm/schedule.hpp"
#include "qnm/state.hpp"

namespace qnm {

struct DiscreteReservoir {
    std::vector<double> omega;  // mode frequencies
    std::vector<double> g2;     // g_m^2 = R(omega_m) * dOmega_m
    int nmax = 3;               // Fock levels 0..nmax-1 per mode
    int total_cap = -1;         // max total boson number; -1 = no cap
    double band_integral() const;  // sum g2
};

enum class DiscretizeScheme { midpoint, gauss };

// Samples R(omega) over [lo, hi] with M modes. Rejects if a positive Bohr
// frequency of the system falls outside the band, or M < 4.
DiscreteReservoir discretize(const ReservoirModel& m, double lo, double hi, int modes,
                             const std::vector<double>& bohr_freqs,
                             DiscretizeScheme scheme = DiscretizeScheme::midpoint);

struct OracleOptions {
    double dt = 0.0;            // 0: chosen from a norm bound
    int krylov_dim = 30;
    double leakage_bound = 1e-6;
    std::vector<double> sample_times;  // reduced states recorded here (and at t_final)
};

struct OracleResult {
    State reduced;                   // at t_final
    std::vector<State> samples;      // at sample_times
    std::vector<double> sample_times;
    double norm_defect = 0.0;        // max | ||psi|| - 1 |
    double leakage = 0.0;            // max top-level population seen
    std::size_t joint_dim = 0;
};

// Dense unitary evolution of system (x) modes from |psi0> (x) vacuum;
// coupling lambda * S (x) Sum_m g_m (a_m + a_m^dag). Rejects if truncation
// leakage exceeds the bound.
OracleResult exact_reduced_dynamics(const Schedule& system_schedule, const CMat& coupling,
                                    const DiscreteReservoir& res, double lambda,
                                    const CVec& psi0, double t_final,
                                    const OracleOptions& opts = {});

}  // namespace qnm
