#include "qnm/eig.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

#include "qnm/errors.hpp"

namespace qnm {

namespace {

double offdiag_norm(const CMat& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

}  // namespace

EigH eig_hermitian(const CMat& m0, double tol, int max_sweeps) {
    assert(m0.rows() == m0.cols());
    const std::size_t n = m0.rows();
    CMat m = m0;
    m.hermitize();
    CMat v = CMat::identity(n);
    const double scale = std::max(m.fro_norm(), 1e-300);

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (offdiag_norm(m) <= tol * scale) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = m(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-300) continue;
                const cplx phase = apq / r;  // apq = r e^{i phi}
                const double app = m(p, p).real();
                const double aqq = m(q, q).real();
                // tan(2 theta) = 2r / (app - aqq)
                const double u = (app - aqq) / (2.0 * r);
                double t;
                if (std::abs(u) < 1e300) {
                    t = 1.0 / (std::abs(u) + std::sqrt(1.0 + u * u));
                    if (u < 0.0) t = -t;
                } else {
                    t = 0.0;
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx gpq = -s * phase;           // U(p,q)
                const cplx gqp = s * std::conj(phase); // U(q,p)

                // M <- U^dag M U ; update columns p,q then rows p,q.
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx mip = m(i, p), miq = m(i, q);
                    m(i, p) = mip * c + miq * gqp;
                    m(i, q) = mip * gpq + miq * c;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const cplx mpj = m(p, j), mqj = m(q, j);
                    m(p, j) = c * mpj + std::conj(gqp) * mqj;
                    m(q, j) = std::conj(gpq) * mpj + c * mqj;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx vip = v(i, p), viq = v(i, q);
                    v(i, p) = vip * c + viq * gqp;
                    v(i, q) = vip * gpq + viq * c;
                }
                m(p, q) = 0.0;
                m(q, p) = 0.0;
            }
        }
    }

    EigH e;
    e.vals.resize(n);
    for (std::size_t i = 0; i < n; ++i) e.vals[i] = m(i, i).real();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return e.vals[a] < e.vals[b]; });
    EigH out;
    out.vals.resize(n);
    out.vecs = CMat(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.vals[k] = e.vals[order[k]];
        for (std::size_t i = 0; i < n; ++i) out.vecs(i, k) = v(i, order[k]);
    }
    return out;
}

double min_eig_hermitian(const CMat& m) {
    if (m.rows() == 0) return 0.0;
    return eig_hermitian(m).vals.front();
}

CMat expm_hermitian(const CMat& h, cplx factor) {
    const EigH e = eig_hermitian(h);
    const std::size_t n = h.rows();
    CMat scaled = e.vecs;  // V * diag(exp(factor * lambda))
    for (std::size_t k = 0; k < n; ++k) {
        const cplx f = std::exp(factor * e.vals[k]);
        for (std::size_t i = 0; i < n; ++i) scaled(i, k) *= f;
    }
    return scaled * e.vecs.adjoint();
}

}  // namespace qnm
