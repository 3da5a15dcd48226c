#include "qnm/fault_map.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "qnm/eig.hpp"
#include "qnm/errors.hpp"
#include "qnm/operators.hpp"
#include "qnm/quadrature.hpp"

namespace qnm {

CMat FaultGenerator::dual_identity() const {
    const std::size_t d = couplings.front().rows();
    CMat a(d, d);
    for (const FaultTerm& term : terms) {
        a += couplings[term.alpha] * term.upsilon;
        a += term.upsilon.adjoint() * couplings[term.beta];
    }
    return a;
}

CMat FaultGenerator::apply(const CMat& rho) const {
    const std::size_t d = rho.rows();
    CMat out(d, d);
    for (const FaultTerm& term : terms) {
        out += term.upsilon * rho * couplings[term.alpha];
        out += couplings[term.beta] * rho * term.upsilon.adjoint();
    }
    out -= cplx(0.5) * anticommutator(dual_identity(), rho);
    return out;
}

FaultGenerator fault_generator(const Couplings& c, const Propagator& p, double s, double t,
                               double eps, int panels, int gl_order) {
    if (t <= s) throw numeric_rejection("fault_generator: empty window");
    if (eps <= 0.0 && !c.mixing) {
        for (const auto& bath : c.baths)
            if (bath.kind() == ReservoirKind::vacuum_cubic)
                throw numeric_rejection("fault_generator: vacuum kernel needs a regulator eps > 0");
    }
    FaultGenerator g;
    g.t = t;
    g.eps = eps;
    g.couplings = c.ops;

    for (std::size_t a = 0; a < c.ops.size(); ++a) {
        for (std::size_t b = 0; b < c.ops.size(); ++b) {
            cplx mix{0.0};
            const ReservoirModel* bath = nullptr;
            if (c.mixing) {
                mix = (*c.mixing)(a, b);
                bath = &c.baths[0];
            } else if (a == b) {
                mix = 1.0;
                bath = &c.baths[a];
            }
            if (mix == cplx{} || !bath) continue;

            FaultTerm term;
            term.alpha = a;
            term.beta = b;
            const MemoryKernel kern = bath->kernel(eps);
            if (kern.is_delta()) {
                // Int_s^t W delta(u-t) S(u,t) du = (W/2) S: endpoint half-weight.
                term.upsilon = c.ops[b];
                term.upsilon *= mix * (0.5 * kern.delta_weight());
                g.terms.push_back(std::move(term));
                continue;
            }
            // Panels graded toward the kernel peak/singularity at u = t.
            const double inner = std::min(0.5 * std::max(eps, 1e-6), (t - s) / (4.0 * panels));
            const QuadGrid tg = panels_graded_to(s, t, inner, 1.5, gl_order);
            CMat ups(c.ops[b].rows(), c.ops[b].cols());
            // Walk u ascending; V(u) = U(u,t) accumulates as V(u') = step(u,u') V(u).
            CMat v = p.unitary(t, tg.x[0]);
            for (std::size_t i = 0; i < tg.size(); ++i) {
                if (i > 0) v = p.step_matrix(tg.x[i - 1], tg.x[i]) * v;
                const CMat su = v.adjoint() * c.ops[b] * v;
                const cplx w = mix * tg.w[i] * kern(tg.x[i] - t);
                kernels::caxpy(ups.data(), w, su.data(), ups.size());
            }
            term.upsilon = std::move(ups);
            g.terms.push_back(std::move(term));
        }
    }
    return g;
}

namespace {

struct PauliBasis {
    std::vector<CMat> transposed;         // P^T, ready for tr(P M) = <P^T.vec, M.vec>_u
    std::vector<std::uint32_t> supports;  // qubit mask per string
    std::size_t dim;
};

PauliBasis pauli_basis(int n) {
    const CMat ops[4] = {CMat::identity(2), sigma_x(), sigma_y(), sigma_z()};
    PauliBasis basis;
    basis.dim = std::size_t{1} << n;
    const std::size_t count = std::size_t{1} << (2 * n);
    for (std::size_t idx = 0; idx < count; ++idx) {
        CMat m = CMat::identity(1);
        std::uint32_t sup = 0;
        for (int q = 0; q < n; ++q) {
            const int digit = static_cast<int>(idx >> (2 * (n - 1 - q))) & 3;
            m = CMat::kron(m, ops[digit]);
            if (digit != 0) sup |= (1u << q);
        }
        basis.transposed.push_back(m.transpose());
        basis.supports.push_back(sup);
    }
    return basis;
}

// tr(P M) via the unconjugated inner product of P^T and M (both row-major).
cplx trace_with(const PauliBasis& b, std::size_t p, const CMat& m) {
    return kernels::cdotu(b.transposed[p].data(), m.data(), m.size());
}

std::uint32_t matrix_support(const PauliBasis& b, const CMat& m) {
    std::uint32_t sup = 0;
    const double scale = std::max(m.fro_norm(), 1e-300);
    for (std::size_t p = 0; p < b.transposed.size(); ++p)
        if (std::abs(trace_with(b, p, m)) > 1e-10 * scale * b.dim) sup |= b.supports[p];
    return sup;
}

}  // namespace

double LocalityProfile::total() const {
    double s = 0.0;
    for (double w : weight) s += w;
    return s;
}

LocalityProfile locality_profile(const FaultGenerator& g, int nqubits) {
    const PauliBasis basis = pauli_basis(nqubits);
    const double d = static_cast<double>(basis.dim);

    LocalityProfile prof;
    prof.weight.assign(nqubits + 1, 0.0);
    for (const FaultTerm& term : g.terms) {
        const std::uint32_t s_sup = matrix_support(basis, g.couplings[term.alpha]);
        for (std::size_t p = 0; p < basis.transposed.size(); ++p) {
            const cplx c = trace_with(basis, p, term.upsilon) / d;
            const double mass = d * std::norm(c);
            if (mass == 0.0) continue;
            const int k = std::max(1, std::popcount(basis.supports[p] | s_sup));
            prof.weight[std::min(k, nqubits)] += mass;
        }
    }
    return prof;
}

SecondOrderMap KickedErrorMap::to_map() const {
    SecondOrderMap map(dim, 0.0, tau * steps, 1.0);
    for (std::size_t a = 0; a < r.size(); ++a)
        for (int j = 0; j < steps; ++j)
            for (int k = 0; k < steps; ++k) {
                const cplx w = r[a](j, k);
                if (w != cplx{}) map.add_term(propagated[a][j], propagated[a][k], w);
            }
    map.finalize();
    return map;
}

double KickedErrorMap::min_r_eig_rel() const {
    double worst = 0.0;
    for (const CMat& m : r) {
        const double tr = std::max(m.trace().real(), 1e-300);
        worst = std::min(worst, min_eig_hermitian(m) / tr);
    }
    return worst;
}

KickedErrorMap kicked_error_map(const std::vector<CMat>& step_generators,
                                const std::vector<CMat>& couplings, const ReservoirModel& bath,
                                double tau, int steps, double eps, int gl_order) {
    if (static_cast<int>(step_generators.size()) < steps)
        throw numeric_rejection("kicked_error_map: fewer generators than steps");
    KickedErrorMap m;
    m.tau = tau;
    m.steps = steps;
    m.dim = couplings.front().rows();

    // Cumulative gate products; fault in interval j propagates through kicks 1..j.
    std::vector<CMat> u_cum;
    CMat u = CMat::identity(m.dim);
    for (int j = 0; j < steps; ++j) {
        CMat h = step_generators[j];
        h.hermitize();
        u = expm_hermitian(h, cplx(0.0, -tau)) * u;
        u_cum.push_back(u);
    }
    for (const CMat& s_op : couplings) {
        std::vector<CMat> prop;
        for (int j = 0; j < steps; ++j) prop.push_back(u_cum[j].adjoint() * s_op * u_cum[j]);
        m.propagated.push_back(std::move(prop));
    }

    const MemoryKernel kern = bath.kernel(eps);
    for (std::size_t a = 0; a < couplings.size(); ++a) {
        CMat r(steps, steps);
        if (kern.is_delta()) {
            for (int j = 0; j < steps; ++j) r(j, j) = kern.delta_weight() * tau;
        } else {
            const QuadGrid gl = gauss_legendre(gl_order, 0.0, tau);
            for (int j = 0; j < steps; ++j)
                for (int k = j; k < steps; ++k) {
                    cplx val{};
                    for (std::size_t iu = 0; iu < gl.size(); ++iu)
                        for (std::size_t iw = 0; iw < gl.size(); ++iw)
                            val += gl.w[iu] * gl.w[iw] *
                                   kern((k - j) * tau + gl.x[iw] - gl.x[iu]);
                    r(j, k) = val;
                    r(k, j) = std::conj(val);
                }
        }
        m.r.push_back(std::move(r));
    }
    return m;
}

double interference_contrast(const KickedErrorMap& m) {
    double off = 0.0, all = 0.0;
    for (const CMat& r : m.r)
        for (int j = 0; j < m.steps; ++j)
            for (int k = 0; k < m.steps; ++k) {
                const double v = std::abs(r(j, k));
                all += v;
                if (j != k) off += v;
            }
    return all > 0.0 ? off / all : 0.0;
}

void save_r_matrix(const KickedErrorMap& m, std::size_t alpha, std::ostream& out) {
    const CMat& r = m.r.at(alpha);
    char buf[64];
    out << "j";
    for (int k = 0; k < m.steps; ++k) out << ",re_" << k << ",im_" << k;
    out << "\n";
    for (int j = 0; j < m.steps; ++j) {
        out << j;
        for (int k = 0; k < m.steps; ++k) {
            std::snprintf(buf, sizeof buf, ",%.17g,%.17g", r(j, k).real(), r(j, k).imag());
            out << buf;
        }
        out << "\n";
    }
}

void save_locality_profile(const LocalityProfile& p, std::ostream& out) {
    char buf[48];
    out << "k,weight\n";
    for (std::size_t k = 1; k < p.weight.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", k, p.weight[k]);
        out << buf;
    }
}

}  // namespace qnm
