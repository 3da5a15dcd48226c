#include "qnm/minimal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qnm/errors.hpp"
#include "qnm/operators.hpp"
#include "qnm/quadrature.hpp"

namespace qnm {

double GateSequence::min_separation_factor() const {
    if (pulses.size() < 2) return std::numeric_limits<double>::infinity();
    std::vector<const PulseGate*> sorted;
    for (const auto& p : pulses) sorted.push_back(&p);
    std::sort(sorted.begin(), sorted.end(),
              [](const PulseGate* a, const PulseGate* b) { return a->center < b->center; });
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        const double sep = sorted[i]->center - sorted[i - 1]->center;
        const double w = std::max(sorted[i]->width, sorted[i - 1]->width);
        m = std::min(m, sep / w);
    }
    return m;
}

bool admissibility(const ReservoirModel& m) { return m.admissible(); }

namespace {

// Variance-form moment of Xhat: <X^dag X> - <X^dag><X> for a fixed pure state,
// or its exact uniform (Haar) average [d tr(X^dag X) - tr X^dag tr X]/(d(d+1)).
double moment(const CMat& xhat, const std::optional<CVec>& psi) {
    if (psi) {
        const CVec xp = xhat * *psi;
        const double x2 = inner(xp, xp).real();
        const cplx ev = inner(*psi, xp);
        return x2 - std::norm(ev);
    }
    const double d = static_cast<double>(xhat.rows());
    const double tr_xx = (xhat.adjoint() * xhat).trace().real();
    const cplx tr_x = xhat.trace();
    return (d * tr_xx - std::norm(tr_x)) / (d * (d + 1.0));
}

struct SequenceWindow {
    Schedule schedule;
    double s, t;
    double f_peak;       // max instantaneous splitting scale
    double max_sep;      // largest center separation
    double min_width;
};

SequenceWindow make_window(const std::vector<PulseGate>& pulses, const MinimalOptions& opts) {
    double lo = 1e300, hi = -1e300, fpk = 0.0, minw = 1e300;
    double cmin = 1e300, cmax = -1e300;
    std::vector<GaussianPulse> gp;
    for (const PulseGate& g : pulses) {
        const GaussianPulse pl = g.to_pulse();
        const double half = std::max(opts.window_factor * g.width,
                                     6.0 * std::sqrt(2.0 * std::numbers::pi) * g.width /
                                         std::max(std::abs(g.action), 0.1));
        lo = std::min(lo, g.center - half);
        hi = std::max(hi, g.center + half);
        fpk = std::max(fpk, std::abs(pl.envelope(g.center)) * 2.0 * g.axis.max_abs());
        minw = std::min(minw, g.width);
        cmin = std::min(cmin, g.center);
        cmax = std::max(cmax, g.center);
        gp.push_back(pl);
    }
    SequenceWindow w{Schedule::gaussian_pulses(std::move(gp), lo, hi), lo, hi, fpk,
                     std::max(cmax - cmin, 0.0), minw};
    return w;
}

double error_functional(const std::vector<PulseGate>& pulses, const std::optional<CVec>& psi,
                        const Couplings& c, const MinimalOptions& opts) {
    for (const auto& bath : c.baths)
        if (!bath.admissible())
            throw numeric_rejection("gate_error: inadmissible reservoir (" + bath.name() +
                                    "), Int R/omega^2 diverges near 0");
    const SequenceWindow w = make_window(pulses, opts);
    const double dt = opts.prop_dt > 0.0 ? opts.prop_dt : w.min_width / 40.0;
    const Propagator prop(w.schedule, dt, false);

    const double omega_max =
        opts.omega_max > 0.0 ? opts.omega_max : w.f_peak + 14.0 / w.min_width;
    // Panels must resolve the cross-gate phases e^{i omega (c_j - c_k)}.
    double pw = opts.omega_panel_width;
    if (pw <= 0.0) {
        pw = 0.5 / w.min_width;
        if (w.max_sep > 0.0) pw = std::min(pw, 5.0 / w.max_sep);
    }
    const int panels = std::max(24, static_cast<int>(std::ceil(omega_max / pw)));
    const QuadGrid wg = panels_uniform(0.0, omega_max, panels, opts.gl_order);

    double delta = 0.0;
    for (const auto& ch : detail::to_channels(c)) {
        const WindowedCoupling wc(prop, ch.op, w.s, w.t, omega_max, /*derivative=*/true);
        for (int sign : {+1, -1}) {
            for (std::size_t i = 0; i < wg.size(); ++i) {
                const double omega = sign * wg.x[i];
                const double r = ch.scale * ch.bath.spectral_density(omega);
                if (r <= 0.0) continue;
                // Xhat(omega) = Int dS/dt e^{+i omega t} dt; delta integrand
                // R(omega)/omega^2 * variance moment.
                const CMat xhat = wc.transform(-omega);
                delta += wg.w[i] * r / (omega * omega) * moment(xhat, psi);
            }
        }
    }
    return delta;
}

}  // namespace

double gate_error(const PulseGate& g, const std::optional<CVec>& psi, const Couplings& c,
                  const MinimalOptions& opts) {
    if (g.action == 0.0) return 0.0;  // X vanishes identically
    return error_functional({g}, psi, c, opts);
}

double sequence_error(const GateSequence& seq, const std::optional<CVec>& psi,
                      const Couplings& c, const MinimalOptions& opts) {
    if (seq.pulses.empty()) return 0.0;
    const double m = seq.min_separation_factor();
    if (m < 6.0)
        throw numeric_rejection("sequence_error: pulses overlap (separation factor " +
                                std::to_string(m) + " < 6)");
    return error_functional(seq.pulses, psi, c, opts);
}

double calibrate_delta1_constant() {
    static const double cal = [] {
        PulseGate g;
        g.action = 0.5 * std::numbers::pi;
        g.width = 1.0;
        g.axis = cplx(0.5) * sigma_z();
        const Couplings c = Couplings::single(sigma_x(), ReservoirModel::vacuum_cubic(1.0));
        const double delta = gate_error(g, std::nullopt, c);
        return delta / (g.action * g.action);  // delta = C R0 alpha^2 / t1^2
    }();
    return cal;
}

OptimizeResult optimize_schedule(int n, double eps, double m_sep, double r0, int k_qubits,
                                 double alpha, double t1_max, double calibration) {
    if (eps <= 0.0 || eps >= 0.5)
        throw numeric_rejection("optimize_schedule: eps must lie in (0, 0.5)");
    if (n < 1) throw numeric_rejection("optimize_schedule: n >= 1 required");
    const double cal = calibration > 0.0 ? calibration : calibrate_delta1_constant();
    const double eps_eff = eps / std::max(k_qubits, 1);
    // delta_n = n * cal * R0 * alpha^2 / t1^2 <= eps_eff
    const double t1 = alpha * std::sqrt(n * cal * r0 / eps_eff);
    if (t1_max > 0.0 && t1 > t1_max) {
        const double best = n * cal * r0 * alpha * alpha / (t1_max * t1_max);
        throw numeric_rejection("optimize_schedule: eps unreachable with t1 <= t1_max; minimal "
                                "achievable delta_n = " +
                                std::to_string(best));
    }
    OptimizeResult res;
    res.t1 = t1;
    res.t_c = n * (m_sep + 1.0) * t1;
    res.delta1 = cal * r0 * alpha * alpha / (t1 * t1);
    res.delta_n = n * res.delta1;
    res.perturbative = res.delta1 <= 0.1;
    return res;
}

}  // namespace qnm
