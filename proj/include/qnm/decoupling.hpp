#pragma once
// Bang-bang spectral analysis: sideband structure of the coupling under
// H(t) = H cos(Omega t) and the per-reservoir decoherence verdict.

#include "qnm/propagator.hpp"
#include "qnm/reservoir.hpp"

namespace qnm {

struct SidebandPeak {
    double omega_k = 0.0;    // Bohr frequency of the component
    double snorm2 = 0.0;     // ||S(omega_k)||_F^2
    std::vector<double> amp; // fitted |c_m| at harmonics m = 0..H (amp[0] ~ c0)
    double c1_ratio = 0.0;   // amp[1] * Omega / omega_k (~1/2 for the first sideband)
};

struct SidebandSpectrum {
    double omega_drive = 0.0;
    double window = 0.0;
    int harmonics = 2;
    std::vector<SidebandPeak> peaks;
    double total_time_norm = 0.0;  // Int ||S(t)||_F^2 dt
    double attributed = 0.0;       // peak-attributed spectral mass (Parseval units)
    double residual_norm = 0.0;    // omitted-harmonics mass
    double carrier_weight = 0.0;   // 2 pi Sum_k amp0^2 ||S(omega_k)||^2
};

// Peak-fits the windowed transform at {0, +-Omega, .., +-H Omega}.
// Rejects windows too short to resolve Omega (Omega T < 4 pi).
SidebandSpectrum bangbang_spectrum(const CMat& h, const CMat& coupling, double omega_drive,
                                   double window, int harmonics = 2);

struct DecouplingVerdict {
    double unmodulated_rate = 0.0;  // static-H Markovian rate
    double residual_rate = 0.0;     // rate with the drive on
    double suppressed_rate = 0.0;
    bool effective = false;         // residual < 1% of unmodulated
};

DecouplingVerdict decoupling_verdict(const SidebandSpectrum& spec, const ReservoirModel& bath);

}  // namespace qnm
