#include "qnm/propagator.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>

#include "qnm/eig.hpp"
#include "qnm/errors.hpp"

namespace qnm {

namespace {
constexpr double kKickSlack = 1e-12;
}

Propagator::Propagator(Schedule sched, double dt, bool richardson_check)
    : sched_(std::move(sched)) {
    const double span = sched_.t1() - sched_.t0();
    if (span <= 0.0) throw numeric_rejection("propagator: empty horizon");
    if (dt <= 0.0) {
        const double scale = std::max(sched_.norm_scale(), 1e-12);
        dt = std::min(span / 16.0, 0.05 / scale);
    }
    const int nsteps = std::max(1, static_cast<int>(std::ceil(span / dt)));
    dt_ = span / nsteps;

    cache_.reserve(nsteps + 1);
    cache_.push_back(CMat::identity(sched_.dim()));
    for (int k = 0; k < nsteps; ++k) {
        const double a = sched_.t0() + k * dt_;
        cache_.push_back(step_matrix(a, a + dt_) * cache_.back());
    }

    if (richardson_check && !sched_.is_kicked()) {
        // Halved-step comparison over the full horizon.
        CMat u2 = CMat::identity(sched_.dim());
        for (int k = 0; k < nsteps; ++k) {
            const double a = sched_.t0() + k * dt_;
            u2 = smooth_step(a + 0.5 * dt_, a + dt_) * (smooth_step(a, a + 0.5 * dt_) * u2);
        }
        diag_.richardson_defect = (u2 - cache_.back()).max_abs();
        if (diag_.richardson_defect > 1e-8)
            diag_.warnings.push_back("time step too coarse: halving dt changes U by " +
                                     std::to_string(diag_.richardson_defect));
    }
}

CMat Propagator::smooth_step(double a, double b) const {
    if (b - a < 1e-300) return CMat::identity(sched_.dim());
    CMat h = sched_.hamiltonian(0.5 * (a + b));
    h.hermitize();
    return expm_hermitian(h, cplx(0.0, -(b - a)));
}

CMat Propagator::step_matrix(double a, double b) const {
    assert(b >= a);
    if (!sched_.is_kicked()) return smooth_step(a, b);
    // Delta train: free (identity) between kicks, exact factor per kick
    // crossed. A kick at time tk applies when a < tk <= b.
    CMat u = CMat::identity(sched_.dim());
    const auto& data = sched_.kicked_data();
    for (const Kick& kick : data.kicks) {
        if (kick.time > a + kKickSlack && kick.time <= b + kKickSlack) {
            CMat g = kick.generator;
            g.hermitize();
            u = expm_hermitian(g, cplx(0.0, -data.tau)) * u;
        }
    }
    return u;
}

CMat Propagator::unitary(double from, double to) const {
    if (!sched_.in_horizon(from) || !sched_.in_horizon(to))
        throw numeric_rejection("propagator: time outside horizon");
    if (to < from) return unitary(to, from).adjoint();
    // U(x, t0) for off-node x: nearest cached node below, partial step up.
    auto to_t0 = [&](double x) {
        const int k = std::clamp(static_cast<int>(std::floor((x - sched_.t0()) / dt_)), 0,
                                 static_cast<int>(cache_.size()) - 1);
        const double node = sched_.t0() + k * dt_;
        if (x - node < 1e-12) return cache_[k];
        return step_matrix(node, x) * cache_[k];
    };
    const CMat uf = to_t0(from);
    const CMat ut = to_t0(to);
    return ut * uf.adjoint();
}

CMat Propagator::heisenberg(const CMat& s_op, double u, double s) const {
    const CMat v = unitary(s, u);
    return v.adjoint() * s_op * v;
}

const CMat& FrequencyDecomposition::at(double omega, double tol) const {
    for (std::size_t k = 0; k < freqs.size(); ++k)
        if (std::abs(freqs[k] - omega) <= tol) return components[k];
    throw numeric_rejection("frequency_components: no bucket at requested omega");
}

FrequencyDecomposition frequency_components(const CMat& h, const CMat& s, double tol_scale) {
    if (!h.is_hermitian(1e-10 * std::max(1.0, h.max_abs())))
        throw numeric_rejection("frequency_components: H not Hermitian");
    const std::size_t d = h.rows();
    const EigH e = eig_hermitian(h);
    double hnorm = 0.0;
    for (double v : e.vals) hnorm = std::max(hnorm, std::abs(v));
    const double tol = tol_scale * std::max(hnorm, 1.0);

    // S in the eigenbasis.
    const CMat sp = e.vecs.adjoint() * s * e.vecs;

    FrequencyDecomposition fd;
    fd.levels = e.vals;

    // Cluster level differences; exact zero bucket for degeneracies.
    std::vector<double> diffs;
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t jp = 0; jp < d; ++jp) diffs.push_back(e.vals[j] - e.vals[jp]);
    std::sort(diffs.begin(), diffs.end());
    std::vector<double> centers;
    for (double x : diffs) {
        if (centers.empty() || x - centers.back() > tol) centers.push_back(x);
    }
    for (double& c : centers)
        if (std::abs(c) <= tol) c = 0.0;

    fd.gap = 0.0;
    for (double c : centers)
        if (c > tol && (fd.gap == 0.0 || c < fd.gap)) fd.gap = c;

    for (double c : centers) {
        CMat comp(d, d);
        bool nonzero = false;
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t jp = 0; jp < d; ++jp) {
                if (std::abs((e.vals[j] - e.vals[jp]) - c) <= tol) {
                    comp(j, jp) = sp(j, jp);
                    if (std::abs(sp(j, jp)) > 0.0) nonzero = true;
                }
            }
        if (!nonzero) continue;
        fd.freqs.push_back(c);
        fd.components.push_back(e.vecs * comp * e.vecs.adjoint());
    }
    return fd;
}

WindowedCoupling::WindowedCoupling(const Propagator& p, const CMat& s_op, double s, double t,
                                   double max_abs_omega, bool derivative, double user_dt,
                                   double adiabatic_eps)
    : s_(s), t_(t), dim_(s_op.rows()) {
    if (t <= s) throw numeric_rejection("windowed transform: empty window");
    const double span = t - s;
    const double required = 0.1 / std::max(max_abs_omega, 1.0 / span);
    if (user_dt > 0.0 && user_dt > required)
        throw numeric_rejection("windowed transform: aliasing guard violated, need dt <= " +
                                std::to_string(required));
    const double node_dt = user_dt > 0.0 ? user_dt : required;
    const int order = 8;
    const int panels = std::max(1, static_cast<int>(std::ceil(span / (order * node_dt))));
    grid_ = panels_uniform(s, t, panels, order);

    const std::size_t nt = grid_.size();
    flat_.assign(dim_ * dim_, CVec(nt));
    CMat u = p.unitary(s, grid_.x[0]);
    for (std::size_t i = 0; i < nt; ++i) {
        if (i > 0) u = p.step_matrix(grid_.x[i - 1], grid_.x[i]) * u;
        CMat su;
        if (derivative) {
            // dS/dt = i U^dag [H(t), S] U
            CMat h = p.schedule().hamiltonian(grid_.x[i]);
            su = u.adjoint() * commutator(h, s_op) * u;
            su *= cplx(0.0, 1.0);
        } else {
            su = u.adjoint() * s_op * u;
        }
        if (adiabatic_eps > 0.0)
            su *= std::exp(-adiabatic_eps * std::abs(grid_.x[i] - 0.5 * (s + t)));
        for (std::size_t e = 0; e < dim_ * dim_; ++e) flat_[e][i] = su.data()[e];
    }
}

CMat WindowedCoupling::transform(double omega) const {
    const std::size_t nt = grid_.size();
    CVec phase(nt);
    for (std::size_t i = 0; i < nt; ++i)
        phase[i] = grid_.w[i] * std::exp(cplx(0.0, -omega * grid_.x[i]));
    CMat y(dim_, dim_);
    for (std::size_t e = 0; e < dim_ * dim_; ++e)
        y.data()[e] = kernels::cdotu(phase.data(), flat_[e].data(), nt);
    return y;
}

double WindowedCoupling::time_norm2() const {
    double s = 0.0;
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        double n2 = 0.0;
        for (std::size_t e = 0; e < dim_ * dim_; ++e) n2 += std::norm(flat_[e][i]);
        s += grid_.w[i] * n2;
    }
    return s;
}

std::vector<CMat> spectral_function(const Propagator& p, const CMat& s_op, double s, double t,
                                    const std::vector<double>& omegas, double user_dt) {
    if (omegas.empty()) return {};
    const double lo = *std::min_element(omegas.begin(), omegas.end());
    const double hi = *std::max_element(omegas.begin(), omegas.end());
    if (std::abs(lo + hi) > 1e-9 * std::max(1.0, hi - lo))
        throw numeric_rejection("spectral_function: omega grid must be symmetric about 0");
    WindowedCoupling wc(p, s_op, s, t, std::max(std::abs(lo), std::abs(hi)), false, user_dt);
    std::vector<CMat> out;
    out.reserve(omegas.size());
    for (double w : omegas) out.push_back(wc.transform(w));
    return out;
}

}  // namespace qnm
