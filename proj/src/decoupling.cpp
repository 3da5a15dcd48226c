#include "qnm/decoupling.hpp"

#include <cmath>
#include <numbers>

#include "qnm/errors.hpp"

namespace qnm {

SidebandSpectrum bangbang_spectrum(const CMat& h, const CMat& coupling, double omega_drive,
                                   double window, int harmonics) {
    if (omega_drive * window < 4.0 * std::numbers::pi)
        throw numeric_rejection("bangbang_spectrum: window too short to resolve Omega (need "
                                "Omega*T >= 4 pi)");
    SidebandSpectrum spec;
    spec.omega_drive = omega_drive;
    spec.window = window;
    spec.harmonics = harmonics;

    const FrequencyDecomposition fd = frequency_components(h, coupling);
    const Propagator prop(Schedule::bangbang(h, omega_drive, 0.0, window),
                          std::min(0.02 / std::max(h.fro_norm(), 1e-9),
                                   0.05 / omega_drive),
                          false);
    const double omega_max = (harmonics + 0.5) * omega_drive;
    const WindowedCoupling wc(prop, coupling, 0.0, window, omega_max);

    // Peak value of the windowed transform at m*Omega is T * c_m(k); the
    // S(omega_k) are Frobenius-orthogonal, so project per component.
    for (std::size_t k = 0; k < fd.freqs.size(); ++k) {
        SidebandPeak peak;
        peak.omega_k = fd.freqs[k];
        peak.snorm2 = std::pow(fd.components[k].fro_norm(), 2);
        for (int m = 0; m <= harmonics; ++m) {
            const CMat y = wc.transform(m * omega_drive);
            const cplx proj =
                kernels::cdotc(fd.components[k].data(), y.data(), y.size());
            peak.amp.push_back(std::abs(proj) / (peak.snorm2 * window));
        }
        if (std::abs(peak.omega_k) > 1e-12)
            peak.c1_ratio = peak.amp[1] * omega_drive / std::abs(peak.omega_k);
        spec.peaks.push_back(std::move(peak));
    }

    spec.total_time_norm = wc.time_norm2();
    for (const SidebandPeak& p : spec.peaks) {
        for (int m = 0; m <= harmonics; ++m) {
            const double mult = (m == 0) ? 1.0 : 2.0;  // +-m
            spec.attributed += mult * p.amp[m] * p.amp[m] * p.snorm2 * window;
        }
        spec.carrier_weight += 2.0 * std::numbers::pi * p.amp[0] * p.amp[0] * p.snorm2;
    }
    spec.residual_norm = std::max(spec.total_time_norm - spec.attributed, 0.0);
    return spec;
}

DecouplingVerdict decoupling_verdict(const SidebandSpectrum& spec, const ReservoirModel& bath) {
    DecouplingVerdict v;
    const double two_pi = 2.0 * std::numbers::pi;
    for (const SidebandPeak& p : spec.peaks) {
        // Static H: component at omega_k samples R(omega_k) (summed over +-k).
        v.unmodulated_rate += two_pi * bath.spectral_density(p.omega_k) * p.snorm2;
        // Driven: carrier at 0 samples R(0); sidebands at +-m Omega.
        v.residual_rate += two_pi * p.amp[0] * p.amp[0] * p.snorm2 * bath.spectral_density(0.0);
        for (int m = 1; m < static_cast<int>(p.amp.size()); ++m) {
            const double w = m * spec.omega_drive;
            v.residual_rate += two_pi * p.amp[m] * p.amp[m] * p.snorm2 *
                               (bath.spectral_density(w) + bath.spectral_density(-w));
        }
    }
    v.suppressed_rate = std::max(v.unmodulated_rate - v.residual_rate, 0.0);
    v.effective = v.residual_rate < 0.01 * v.unmodulated_rate;
    return v;
}

}  // namespace qnm
