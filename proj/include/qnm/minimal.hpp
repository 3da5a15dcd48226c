#pragma once
// Minimal decoherence model: vacuum-only gate errors, Gaussian pulses,
// sequence additivity and the time-energy trade-off optimizer.

#include <optional>

#include "qnm/error_map.hpp"
#include "qnm/schedule.hpp"

namespace qnm {

struct PulseGate {
    double action = 1.0;  // alpha
    double width = 1.0;   // t1
    double center = 0.0;
    CMat axis;            // generator: H(t) = f(t) * axis
    GaussianPulse to_pulse() const { return {center, width, action, axis}; }
};

struct GateSequence {
    std::vector<PulseGate> pulses;
    // Smallest center separation in units of the wider pulse.
    double min_separation_factor() const;
};

struct MinimalOptions {
    double window_factor = 8.0;  // window half-extent per pulse, in widths
    int gl_order = 12;
    double omega_panel_width = 0.0;  // 0: chosen from widths and separations
    double omega_max = 0.0;          // 0: (|f(0)| + 14/t1) scale
    double prop_dt = 0.0;
};

// True iff Int R(omega)/omega^2 converges near 0 (no pure-dephasing weight).
bool admissibility(const ReservoirModel& m);

// Error delta of a single pulse gate. psi = nullopt averages over pure input
// states (exact second-moment Haar average). Rejects inadmissible baths.
double gate_error(const PulseGate& g, const std::optional<CVec>& psi, const Couplings& c,
                  const MinimalOptions& opts = {});

// Full evaluation over the whole sequence window (cross-gate terms included).
// Rejects overlapping pulses (separation factor < 6).
double sequence_error(const GateSequence& seq, const std::optional<CVec>& psi,
                      const Couplings& c, const MinimalOptions& opts = {});

// delta1 = C * R0 * alpha^2 / t1^2: the constant C from one reference
// quadrature at alpha = pi/2, t1 = 1, R0 = 1 (sigma_x coupling, Haar input).
double calibrate_delta1_constant();

struct OptimizeResult {
    double t1 = 0.0;
    double t_c = 0.0;      // n (m+1) t1
    double delta_n = 0.0;  // achieved sequence error
    double delta1 = 0.0;
    bool perturbative = true;  // delta1 <= 0.1
};

// Smallest t1 with n gates of action alpha meeting delta_n <= eps (per-qubit
// target eps/k_qubits), using the calibrated law. Rejects eps outside (0, 0.5)
// and reports the minimal achievable delta when t1_max binds.
OptimizeResult optimize_schedule(int n, double eps, double m_sep, double r0, int k_qubits = 1,
                                 double alpha = 1.5707963267948966, double t1_max = 0.0,
                                 double calibration = 0.0);

}  // namespace qnm
