#include "qnm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>

#include "qnm/eig.hpp"
#include "qnm/errors.hpp"
#include "qnm/quadrature.hpp"

namespace qnm {

double DiscreteReservoir::band_integral() const {
    double s = 0.0;
    for (double g : g2) s += g;
    return s;
}

DiscreteReservoir discretize(const ReservoirModel& m, double lo, double hi, int modes,
                             const std::vector<double>& bohr_freqs, DiscretizeScheme scheme) {
    if (modes < 4) throw numeric_rejection("discretize: need at least 4 modes");
    if (hi <= lo) throw numeric_rejection("discretize: empty band");
    for (double w : bohr_freqs)
        if (w > 1e-12 && (w < lo || w > hi))
            throw numeric_rejection("discretize: band excludes Bohr frequency " +
                                    std::to_string(w));
    DiscreteReservoir d;
    if (scheme == DiscretizeScheme::midpoint) {
        const double dw = (hi - lo) / modes;
        for (int k = 0; k < modes; ++k) {
            const double w = lo + (k + 0.5) * dw;
            d.omega.push_back(w);
            d.g2.push_back(m.spectral_density(w) * dw);
        }
    } else {
        const QuadGrid g = gauss_legendre(modes, lo, hi);
        for (int k = 0; k < modes; ++k) {
            d.omega.push_back(g.x[k]);
            d.g2.push_back(m.spectral_density(g.x[k]) * g.w[k]);
        }
    }
    return d;
}

namespace {

// Joint basis: index = sys * nocc + occ. Occupations enumerated with
// per-mode cap and optional total cap.
struct JointSpace {
    std::vector<std::vector<std::uint8_t>> occs;
    std::vector<double> mode_energy;       // Sum omega_m n_m per occ state
    std::vector<std::uint8_t> at_top;      // any n_m == nmax-1 or total == cap
    // B = Sum_m sqrt(g2_m) (a_m + a^dag_m): symmetric real sparse, upper part.
    std::vector<std::uint32_t> bi, bj;
    std::vector<double> bv;

    explicit JointSpace(const DiscreteReservoir& r) {
        const int m = static_cast<int>(r.omega.size());
        std::vector<std::uint8_t> cur(m, 0);
        enumerate(r, cur, 0, 0);
        std::map<std::vector<std::uint8_t>, std::uint32_t> index;
        for (std::uint32_t i = 0; i < occs.size(); ++i) index[occs[i]] = i;
        mode_energy.resize(occs.size());
        at_top.resize(occs.size());
        for (std::uint32_t i = 0; i < occs.size(); ++i) {
            double e = 0.0;
            int total = 0;
            bool top = false;
            for (int k = 0; k < m; ++k) {
                e += r.omega[k] * occs[i][k];
                total += occs[i][k];
                if (occs[i][k] == r.nmax - 1) top = true;
            }
            if (r.total_cap >= 0 && total == r.total_cap) top = true;
            mode_energy[i] = e;
            at_top[i] = top;
            // raising entries: (i, raise_m(i))
            for (int k = 0; k < m; ++k) {
                if (r.g2[k] <= 0.0) continue;
                auto up = occs[i];
                up[k] += 1;
                const auto it = index.find(up);
                if (it == index.end()) continue;
                bi.push_back(it->second);  // row: raised state
                bj.push_back(i);
                bv.push_back(std::sqrt(r.g2[k]) * std::sqrt(static_cast<double>(occs[i][k] + 1)));
            }
        }
    }

    void enumerate(const DiscreteReservoir& r, std::vector<std::uint8_t>& cur, int mode,
                   int total) {
        if (mode == static_cast<int>(cur.size())) {
            occs.push_back(cur);
            return;
        }
        for (int n = 0; n < r.nmax; ++n) {
            if (r.total_cap >= 0 && total + n > r.total_cap) break;
            cur[mode] = n;
            enumerate(r, cur, mode + 1, total + n);
        }
        cur[mode] = 0;
    }

    std::size_t size() const { return occs.size(); }

    // y += (a + a^dag)-type symmetric apply over the occ index, per system block.
    void apply_b(const cplx* x, cplx* y) const {
        for (std::size_t e = 0; e < bv.size(); ++e) {
            y[bi[e]] += bv[e] * x[bj[e]];
            y[bj[e]] += bv[e] * x[bi[e]];
        }
    }
};

struct JointHamiltonian {
    const JointSpace& space;
    const CMat& sys_h;     // current system Hamiltonian
    const CMat& coupling;  // S
    double lambda;
    std::size_t sdim, nocc;
    mutable CVec tmp;

    void apply(const cplx* x, cplx* y) const {
        const std::size_t dim = sdim * nocc;
        std::fill(y, y + dim, cplx{});
        // H_sys (x) 1
        for (std::size_t a = 0; a < sdim; ++a)
            for (std::size_t b = 0; b < sdim; ++b) {
                const cplx h = sys_h(a, b);
                if (h != cplx{}) kernels::caxpy(y + a * nocc, h, x + b * nocc, nocc);
            }
        // 1 (x) Sum omega_m n_m
        for (std::size_t a = 0; a < sdim; ++a)
            kernels::diag_axpy(y + a * nocc, 1.0, space.mode_energy.data(), x + a * nocc, nocc);
        // lambda S (x) B
        tmp.assign(dim, cplx{});
        for (std::size_t a = 0; a < sdim; ++a)
            space.apply_b(x + a * nocc, tmp.data() + a * nocc);
        for (std::size_t a = 0; a < sdim; ++a)
            for (std::size_t b = 0; b < sdim; ++b) {
                const cplx sab = lambda * coupling(a, b);
                if (sab != cplx{}) kernels::caxpy(y + a * nocc, sab, tmp.data() + b * nocc, nocc);
            }
    }
};

// psi <- exp(-i dt H) psi via Lanczos with full reorthogonalization.
void lanczos_step(const JointHamiltonian& h, CVec& psi, double dt, int m) {
    const std::size_t dim = psi.size();
    const double nrm = norm(psi);
    std::vector<CVec> v;
    v.reserve(m);
    CVec v0 = psi;
    kernels::cscal(v0.data(), 1.0 / nrm, dim);
    v.push_back(std::move(v0));
    std::vector<double> alpha, beta;
    CVec w(dim);
    int built = 0;
    for (int j = 0; j < m; ++j) {
        h.apply(v[j].data(), w.data());
        if (j > 0) kernels::caxpy(w.data(), -beta[j - 1], v[j - 1].data(), dim);
        const double a = kernels::cdotc(v[j].data(), w.data(), dim).real();
        alpha.push_back(a);
        kernels::caxpy(w.data(), -a, v[j].data(), dim);
        for (int k = 0; k <= j; ++k) {  // reorthogonalize
            const cplx c = kernels::cdotc(v[k].data(), w.data(), dim);
            kernels::caxpy(w.data(), -c, v[k].data(), dim);
        }
        built = j + 1;
        const double b = norm(w);
        if (b < 1e-13 || j == m - 1) break;
        beta.push_back(b);
        CVec vn = w;
        kernels::cscal(vn.data(), 1.0 / b, dim);
        v.push_back(std::move(vn));
    }
    CMat t(built, built);
    for (int j = 0; j < built; ++j) {
        t(j, j) = alpha[j];
        if (j + 1 < built) {
            t(j, j + 1) = beta[j];
            t(j + 1, j) = beta[j];
        }
    }
    const CMat u = expm_hermitian(t, cplx(0.0, -dt));
    std::fill(psi.begin(), psi.end(), cplx{});
    for (int j = 0; j < built; ++j) kernels::caxpy(psi.data(), nrm * u(j, 0), v[j].data(), dim);
}

}  // namespace

OracleResult exact_reduced_dynamics(const Schedule& system_schedule, const CMat& coupling,
                                    const DiscreteReservoir& res, double lambda,
                                    const CVec& psi0, double t_final,
                                    const OracleOptions& opts) {
    const JointSpace space(res);
    const std::size_t sdim = coupling.rows();
    const std::size_t nocc = space.size();
    const std::size_t dim = sdim * nocc;
    if (dim > 200000)
        throw numeric_rejection("oracle: joint dimension " + std::to_string(dim) +
                                " too large for dense evolution");

    // Norm bound for the step choice.
    double gsum = 0.0, emax = 0.0;
    for (double g : res.g2) gsum += std::sqrt(g);
    for (double e : space.mode_energy) emax = std::max(emax, std::abs(e));
    const double hbound = system_schedule.norm_scale() + emax +
                          2.0 * std::abs(lambda) * coupling.fro_norm() * gsum *
                              std::sqrt(static_cast<double>(res.nmax));
    double dt = opts.dt > 0.0 ? opts.dt
                              : std::min(0.5 * (opts.krylov_dim - 6) / std::max(hbound, 1e-9),
                                         (t_final - system_schedule.t0()) / 8.0);
    // Pulse schedules need the envelope resolved for the midpoint freeze.
    if (const auto* pulses = system_schedule.pulses_data(); pulses && opts.dt <= 0.0)
        for (const auto& pl : pulses->pulses) dt = std::min(dt, pl.width / 24.0);

    CVec psi(dim, cplx{});
    if (psi0.size() != sdim) throw numeric_rejection("oracle: initial state dimension mismatch");
    for (std::size_t a = 0; a < sdim; ++a) psi[a * nocc + 0] = psi0[a];  // modes in vacuum

    OracleResult result;
    result.joint_dim = dim;

    std::vector<double> stops = opts.sample_times;
    stops.push_back(t_final);
    std::sort(stops.begin(), stops.end());

    auto reduce = [&]() {
        CMat rho(sdim, sdim);
        for (std::size_t a = 0; a < sdim; ++a)
            for (std::size_t b = 0; b < sdim; ++b)
                rho(a, b) = kernels::cdotc(psi.data() + b * nocc, psi.data() + a * nocc, nocc);
        rho.hermitize();
        State st;
        st.rho = std::move(rho);
        return st;
    };
    auto check = [&]() {
        result.norm_defect = std::max(result.norm_defect, std::abs(norm(psi) - 1.0));
        double top = 0.0;
        for (std::size_t a = 0; a < sdim; ++a)
            for (std::size_t o = 0; o < nocc; ++o)
                if (space.at_top[o]) top += std::norm(psi[a * nocc + o]);
        result.leakage = std::max(result.leakage, top);
        if (result.leakage > opts.leakage_bound)
            throw numeric_rejection("oracle: truncation leakage " + std::to_string(result.leakage) +
                                    " exceeds bound; increase N_max beyond " +
                                    std::to_string(res.nmax));
    };

    double t = system_schedule.t0();
    for (double stop : stops) {
        while (t < stop - 1e-12) {
            const double step = std::min(dt, stop - t);
            CMat sys_h = system_schedule.hamiltonian(t + 0.5 * step);
            sys_h.hermitize();
            const JointHamiltonian jh{space, sys_h, coupling, lambda, sdim, nocc, {}};
            lanczos_step(jh, psi, step, opts.krylov_dim);
            t += step;
        }
        check();
        const bool is_sample =
            std::find_if(opts.sample_times.begin(), opts.sample_times.end(),
                         [&](double x) { return std::abs(x - stop) < 1e-12; }) !=
            opts.sample_times.end();
        if (is_sample) {
            result.samples.push_back(reduce());
            result.sample_times.push_back(stop);
        }
        if (std::abs(stop - t_final) < 1e-12) result.reduced = reduce();
    }
    return result;
}

}  // namespace qnm
