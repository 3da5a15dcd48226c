#include "qnm/error_map.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <set>

#include "qnm/eig.hpp"
#include "qnm/errors.hpp"

namespace qnm {

Couplings Couplings::single(CMat s, ReservoirModel bath, double lambda) {
    Couplings c;
    s *= lambda;
    c.ops.push_back(std::move(s));
    c.baths.push_back(std::move(bath));
    c.lambda = lambda;
    return c;
}

Couplings Couplings::diagonal(std::vector<CMat> ops, std::vector<ReservoirModel> baths) {
    if (ops.size() != baths.size())
        throw numeric_rejection("couplings: ops/baths size mismatch");
    Couplings c;
    c.ops = std::move(ops);
    c.baths = std::move(baths);
    return c;
}

Couplings Couplings::mixed(std::vector<CMat> ops, ReservoirModel shared, CMat m) {
    if (m.rows() != ops.size() || m.cols() != ops.size())
        throw numeric_rejection("couplings: mixing matrix dimension mismatch");
    Couplings c;
    c.ops = std::move(ops);
    c.baths.assign(c.ops.size(), shared);
    c.mixing = std::move(m);
    return c;
}

SecondOrderMap::SecondOrderMap(std::size_t dim, double s, double t, double lambda)
    : dim_(dim), s_(s), t_(t), lambda_(lambda), choi_(dim * dim, dim * dim) {}

namespace {
// Row-major vec of B^T: x[(i,k)] = B(k,i), so the Choi of rho -> B rho A^dag
// is x_B x_A^dag.
CVec choi_vec(const CMat& b) { return b.transpose().vec(); }
}

void SecondOrderMap::add_term(const CMat& b, const CMat& a, cplx w) {
    const CVec u = choi_vec(b), v = choi_vec(a);
    kernels::rank1(choi_.data(), w, u.data(), v.data(), dim_ * dim_);
}

void SecondOrderMap::add_hermitian_term(const CMat& b, double w) {
    const CVec u = choi_vec(b);
    kernels::rank1_herm(choi_.data(), w, u.data(), dim_ * dim_);
}

void SecondOrderMap::finalize() {
    choi_.hermitize();
    // A = (tr_2 Choi)^T: A_ji = Sum_k Choi[(i,k),(j,k)].
    a_ = CMat(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) {
            cplx s{};
            for (std::size_t k = 0; k < dim_; ++k) s += choi_(i * dim_ + k, j * dim_ + k);
            a_(j, i) = s;
        }
    a_.hermitize();
    diag_.phi_scale = a_.trace().real() / dim_;
    if (diag_.phi_scale > 0.5) {
        diag_.breakdown = true;
        diag_.warnings.push_back("second order unreliable: ||Phi|| scale " +
                                 std::to_string(diag_.phi_scale) + " > 0.5");
    }
}

CMat SecondOrderMap::apply(const CMat& rho) const {
    CMat out(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) {
            const cplx rij = rho(i, j);
            if (rij == cplx{}) continue;
            // Phi(rho)_{kl} += rho_ij Choi[(i,k),(j,l)]
            for (std::size_t k = 0; k < dim_; ++k)
                kernels::caxpy(out.row(k), rij, choi_.row(i * dim_ + k) + j * dim_, dim_);
        }
    return out;
}

double SecondOrderMap::min_choi_eig() const { return min_eig_hermitian(choi_); }

std::vector<std::pair<double, CMat>> SecondOrderMap::kraus() const {
    const EigH e = eig_hermitian(choi_);
    std::vector<std::pair<double, CMat>> out;
    for (std::size_t k = 0; k < e.vals.size(); ++k) {
        if (std::abs(e.vals[k]) < 1e-14) continue;
        CMat op(dim_, dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) op(j, i) = e.vecs(i * dim_ + j, k);
        out.emplace_back(e.vals[k], std::move(op));
    }
    return out;
}

void SecondOrderMap::save_choi(std::ostream& out) const {
    char buf[96];
    for (std::size_t idx = 0; idx < choi_.size(); ++idx) {
        const cplx z = choi_.data()[idx];
        std::snprintf(buf, sizeof buf, "%zu %.17g %.17g\n", idx, z.real(), z.imag());
        out << buf;
    }
}

namespace detail {

// Rotate mixed couplings into independent channels: M = V diag(mu) V^dag,
// G_c = Sum_b conj(V_{bc}) S_b with density mu_c R(omega).
std::vector<DiagonalChannel> to_channels(const Couplings& c) {
    if (c.ops.empty()) throw numeric_rejection("error_map: no couplings");
    std::vector<DiagonalChannel> ch;
    if (!c.mixing) {
        for (std::size_t a = 0; a < c.ops.size(); ++a)
            ch.push_back({c.ops[a], c.baths[a], 1.0});
        return ch;
    }
    CMat m = *c.mixing;
    m.hermitize();
    const EigH e = eig_hermitian(m);
    if (e.vals.front() < -1e-12 * std::max(1.0, std::abs(e.vals.back())))
        throw numeric_rejection("error_map: non-PSD R_ab mixing matrix (unphysical reservoir)");
    for (std::size_t cidx = 0; cidx < e.vals.size(); ++cidx) {
        if (e.vals[cidx] <= 1e-14) continue;
        CMat g(c.ops[0].rows(), c.ops[0].cols());
        for (std::size_t b = 0; b < c.ops.size(); ++b)
            kernels::caxpy(g.data(), std::conj(e.vecs(b, cidx)), c.ops[b].data(), g.size());
        ch.push_back({std::move(g), c.baths[0], e.vals[cidx]});
    }
    return ch;
}

// Bohr-frequency centers for the omega grid, from H sampled over the window.
std::vector<double> grid_centers(const Propagator& p, double s, double t) {
    std::set<double> centers{0.0};
    const int samples = p.schedule().is_constant() ? 1 : 5;
    for (int k = 0; k < samples; ++k) {
        const double tk = s + (t - s) * (samples == 1 ? 0.5 : k / double(samples - 1));
        CMat h = p.schedule().hamiltonian(tk);
        h.hermitize();
        const EigH e = eig_hermitian(h);
        for (double a : e.vals)
            for (double b : e.vals) {
                const double w = a - b;
                if (std::abs(w) > 1e-12) centers.insert(w);
            }
    }
    return {centers.begin(), centers.end()};
}

QuadGrid frequency_grid(const std::vector<double>& centers, double span,
                        const FrequencyQuadrature& q) {
    double cmax = 0.0;
    for (double c : centers) cmax = std::max(cmax, std::abs(c));
    const double omega_max =
        q.omega_max > 0.0 ? q.omega_max : 10.0 * std::max(cmax, 1.0 / span);
    const double hw = q.peak_halfwidth > 0.0 ? q.peak_halfwidth
                                             : std::min(30.0 / span, 0.45 * omega_max);
    // Merge the fine intervals around each center.
    std::vector<std::pair<double, double>> fine;
    for (double c : centers) {
        const double lo = std::max(c - hw, -omega_max), hi = std::min(c + hw, omega_max);
        if (!fine.empty() && lo <= fine.back().second) {
            fine.back().second = std::max(fine.back().second, hi);
        } else {
            fine.emplace_back(lo, hi);
        }
    }
    QuadGrid g;
    double cursor = -omega_max;
    for (const auto& [lo, hi] : fine) {
        if (lo > cursor) g.append(panels_uniform(cursor, lo, q.filler_panels, q.gl_order));
        g.append(panels_uniform(lo, hi, q.peak_panels, q.gl_order));
        cursor = hi;
    }
    if (cursor < omega_max)
        g.append(panels_uniform(cursor, omega_max, q.filler_panels, q.gl_order));
    return g;
}

}  // namespace detail

using detail::DiagonalChannel;
using detail::to_channels;
using detail::grid_centers;
using detail::frequency_grid;

SecondOrderMap error_map(const Couplings& c, const Propagator& p, double s, double t,
                         const FrequencyQuadrature& q) {
    const std::vector<DiagonalChannel> channels = to_channels(c);
    const std::size_t dim = channels[0].op.rows();
    SecondOrderMap map(dim, s, t, c.lambda);
    for (const std::string& w : p.diagnostics().warnings) map.diag().warnings.push_back(w);

    const std::vector<double> centers = grid_centers(p, s, t);
    const QuadGrid wgrid = frequency_grid(centers, t - s, q);
    double omega_max = 0.0;
    for (double w : wgrid.x) omega_max = std::max(omega_max, std::abs(w));

    for (const DiagonalChannel& ch : channels) {
        if (ch.bath.kind() == ReservoirKind::white) {
            // Exact time-domain form: Phi rho = R0 Int S(u,s) rho S(u,s) du.
            const double level = ch.scale * ch.bath.level();
            double cmax = 1.0 / (t - s);
            for (double c : centers) cmax = std::max(cmax, std::abs(c));
            const int panels = std::max(16, static_cast<int>(std::ceil((t - s) * cmax)));
            const QuadGrid tg = panels_uniform(s, t, panels, 8);
            CMat u = p.unitary(s, tg.x[0]);
            for (std::size_t i = 0; i < tg.size(); ++i) {
                if (i > 0) u = p.step_matrix(tg.x[i - 1], tg.x[i]) * u;
                const CMat su = u.adjoint() * ch.op * u;
                map.add_hermitian_term(su, level * tg.w[i]);
            }
            continue;
        }
        WindowedCoupling wc(p, ch.op, s, t, omega_max, false, q.time_dt, q.adiabatic_eps);
        for (std::size_t i = 0; i < wgrid.size(); ++i) {
            const double omega = wgrid.x[i];
            const double r = ch.scale * ch.bath.spectral_density(omega);
            if (r <= 0.0) continue;
            // Yhat(omega) = Y(-omega)
            const CMat yhat = wc.transform(-omega);
            map.add_hermitian_term(yhat, r * wgrid.w[i]);
        }
    }
    map.finalize();
    return map;
}

SecondOrderMap error_map_discrete(const CMat& s_op, const DiscreteReservoir& res, double lambda,
                                  const Propagator& p, double s, double t, double time_dt) {
    double omega_max = 1.0 / (t - s);
    for (double w : res.omega) omega_max = std::max(omega_max, std::abs(w));
    SecondOrderMap map(s_op.rows(), s, t, lambda);
    WindowedCoupling wc(p, s_op, s, t, omega_max, false, time_dt);
    for (std::size_t m = 0; m < res.omega.size(); ++m) {
        if (res.g2[m] <= 0.0) continue;
        const CMat yhat = wc.transform(-res.omega[m]);
        map.add_hermitian_term(yhat, lambda * lambda * res.g2[m]);
    }
    map.finalize();
    return map;
}

State evolve_second_order(const SecondOrderMap& map, const Propagator& p, const State& rho0,
                          MapDiagnostics* diag_out) {
    if (rho0.dim() != map.dim())
        throw numeric_rejection("evolve: state dimension mismatch");
    CMat inner = rho0.rho;
    inner -= cplx(0.5) * anticommutator(map.correction(), rho0.rho);
    inner += map.apply(rho0.rho);
    const CMat u = p.unitary(map.window_start(), map.window_end());
    State out;
    out.rho = u * inner * u.adjoint();
    out.rho.hermitize();
    if (diag_out) {
        *diag_out = map.diag();
        const double lam4 = map.diag().phi_scale * map.diag().phi_scale;
        const double mineig = min_eig_hermitian(out.rho);
        if (mineig < -10.0 * std::max(lam4, 1e-14)) {
            diag_out->breakdown = true;
            diag_out->warnings.push_back("output eigenvalue " + std::to_string(mineig) +
                                         " below perturbative tolerance (not clipped)");
        }
    }
    return out;
}

double map_fidelity_interaction(const CVec& psi0, const SecondOrderMap& map) {
    State rho0 = State::from_pure(psi0);
    CMat inner = rho0.rho;
    inner -= cplx(0.5) * anticommutator(map.correction(), rho0.rho);
    inner += map.apply(rho0.rho);
    return fidelity_pure(psi0, inner);
}

double map_fidelity(const CVec& psi0, const SecondOrderMap& map, const Propagator& p) {
    const State rho_t = evolve_second_order(map, p, State::from_pure(psi0));
    const CMat u = p.unitary(map.window_start(), map.window_end());
    const CVec psi_t = u * psi0;
    return fidelity_pure(psi_t, rho_t.rho);
}

SecondOrderMap markovian_map(const CMat& h, const Couplings& c, double tau) {
    const std::vector<DiagonalChannel> channels = to_channels(c);
    const std::size_t dim = channels[0].op.rows();
    SecondOrderMap map(dim, -0.5 * tau, 0.5 * tau, c.lambda);

    double gap = 0.0;
    bool degenerate_flagged = false;
    for (const DiagonalChannel& ch : channels) {
        const FrequencyDecomposition fd = frequency_components(h, ch.op);
        if (fd.gap > 0.0) gap = (gap == 0.0) ? fd.gap : std::min(gap, fd.gap);
        // Degenerate levels: cross-degenerate couplings land in the 0 bucket.
        bool degenerate = false;
        std::vector<double> lv = fd.levels;
        std::sort(lv.begin(), lv.end());
        for (std::size_t j = 1; j < lv.size(); ++j)
            if (lv[j] - lv[j - 1] <= 1e-9 * std::max(1.0, std::abs(lv[j]))) degenerate = true;
        for (std::size_t k = 0; k < fd.freqs.size(); ++k) {
            const double omega_k = fd.freqs[k];
            if (omega_k == 0.0 && degenerate && !degenerate_flagged) {
                map.diag().warnings.push_back(
                    "degenerate levels: cross-degenerate coupling terms assigned to the "
                    "omega = 0 bucket");
                degenerate_flagged = true;
            }
            const double weight =
                2.0 * std::numbers::pi * tau * ch.scale * ch.bath.spectral_density(omega_k);
            if (weight <= 0.0) continue;
            const CMat jump = fd.components[k].adjoint();  // S(omega_k)^dag
            map.add_hermitian_term(jump, weight);
            map.mutable_channels().push_back({omega_k, weight, jump});
        }
    }
    if (gap > 0.0 && tau < 10.0 / gap) {
        map.diag().markov_window_short = true;
        map.diag().warnings.push_back("tau below Markovian window 10/gap = " +
                                      std::to_string(10.0 / gap));
    }
    map.finalize();
    return map;
}

std::pair<SecondOrderMap, SecondOrderMap> split_dephasing_dissipation(const SecondOrderMap& map) {
    if (!map.has_channels())
        throw numeric_rejection("split: map has no frequency buckets (build with markovian_map)");
    SecondOrderMap pure(map.dim(), map.window_start(), map.window_end(), map.lambda());
    SecondOrderMap diss(map.dim(), map.window_start(), map.window_end(), map.lambda());
    for (const MarkovChannel& ch : map.channels()) {
        SecondOrderMap& dst = (ch.omega_k == 0.0) ? pure : diss;
        dst.add_hermitian_term(ch.jump, ch.weight);
        dst.mutable_channels().push_back(ch);
    }
    pure.finalize();
    diss.finalize();
    return {std::move(pure), std::move(diss)};
}

}  // namespace qnm
