#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "qnm/cmat.hpp"
#include "qnm/eig.hpp"
#include "qnm/operators.hpp"
#include "qnm/quadrature.hpp"
#include "qnm/rng.hpp"
#include "qnm/state.hpp"

using namespace qnm;

namespace {
CMat random_hermitian(Rng& rng, std::size_t n) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = cplx(rng.gaussian(), rng.gaussian());
    m.hermitize();
    return m;
}
}  // namespace

TEST_CASE("matrix algebra basics") {
    const CMat x = sigma_x(), y = sigma_y(), z = sigma_z();
    CHECK((x * y - cplx(0, 1) * z).max_abs() < 1e-15);  // XY = iZ
    CHECK((x * x - CMat::identity(2)).max_abs() < 1e-15);
    CHECK((CMat::kron(x, z) * CMat::kron(x, z) - CMat::identity(4)).max_abs() < 1e-15);
    CHECK(std::abs((x * x).trace() - cplx(2.0)) < 1e-15);
}

TEST_CASE("jacobi eigensolver reconstructs random Hermitian matrices") {
    Rng rng(42);
    for (std::size_t n : {2u, 3u, 8u, 16u, 32u}) {
        const CMat m = random_hermitian(rng, n);
        const EigH e = eig_hermitian(m);
        // V unitary
        CHECK((e.vecs.adjoint() * e.vecs - CMat::identity(n)).max_abs() < 1e-12);
        // Reconstruction
        CMat lam(n, n);
        for (std::size_t i = 0; i < n; ++i) lam(i, i) = e.vals[i];
        CHECK((e.vecs * lam * e.vecs.adjoint() - m).max_abs() < 1e-11 * std::max(1.0, m.max_abs()));
        // Ascending
        for (std::size_t i = 1; i < n; ++i) CHECK(e.vals[i] >= e.vals[i - 1]);
    }
}

TEST_CASE("eigensolver on known matrices") {
    const EigH e = eig_hermitian(sigma_z());
    CHECK(e.vals[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(e.vals[1] == doctest::Approx(1.0).epsilon(1e-14));
    const EigH ex = eig_hermitian(sigma_x());
    CHECK(ex.vals[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(ex.vals[1] == doctest::Approx(1.0).epsilon(1e-14));
}

// Oracle: truncated power series of exp(-iHt) at small t.
TEST_CASE("hermitian exponential against a series oracle") {
    Rng rng(3);
    const CMat h = random_hermitian(rng, 6);
    const double t = 0.05;
    CMat series = CMat::identity(6);
    CMat term = CMat::identity(6);
    for (int k = 1; k <= 24; ++k) {
        term = term * h;
        term *= cplx(0.0, -t) / cplx(static_cast<double>(k));
        series += term;
    }
    const CMat u = expm_hermitian(h, cplx(0.0, -t));
    CHECK((u - series).max_abs() < 1e-12);
    CHECK((u * u.adjoint() - CMat::identity(6)).max_abs() < 1e-12);
}

TEST_CASE("gauss-legendre integrates polynomials and oscillations") {
    const QuadGrid g = gauss_legendre(12, 0.0, 1.0);
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) s += g.w[i] * g.x[i] * g.x[i];
    CHECK(s == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    // Int_0^{2pi} sin^2 = pi with panelled rule
    const QuadGrid p = panels_uniform(0.0, 2.0 * std::numbers::pi, 8, 10);
    double s2 = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s2 += p.w[i] * std::pow(std::sin(p.x[i]), 2);
    CHECK(s2 == doctest::Approx(std::numbers::pi).epsilon(1e-12));

    // Graded panels cover the full interval
    const QuadGrid gr = panels_graded_to(0.0, 1.0, 1e-4, 1.6, 8);
    double len = 0.0;
    for (double w : gr.w) len += w;
    CHECK(len == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("trace distance and fidelity") {
    const State a = State::excited(), b = State::ground();
    CHECK(trace_distance(a.rho, b.rho) == doctest::Approx(1.0));
    CHECK(trace_distance(a.rho, a.rho) == doctest::Approx(0.0));
    const CVec plus = {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    CHECK(fidelity_pure(plus, State::plus().rho) == doctest::Approx(1.0));
    CHECK(fidelity_pure(plus, a.rho) == doctest::Approx(0.5));
}

TEST_CASE("random densities are valid states") {
    Rng rng(99);
    for (int k = 0; k < 5; ++k) {
        State st;
        st.rho = random_density(rng, 4);
        st.validate(1e-10);
    }
}
