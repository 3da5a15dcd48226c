#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "qnm/errors.hpp"
#include "qnm/operators.hpp"
#include "qnm/quadrature.hpp"
#include "qnm/rng.hpp"
#include "qnm/schedule.hpp"

using namespace qnm;

TEST_CASE("pauli string construction") {
    const Operator x = pauli("X");
    CHECK(x.mat(0, 0) == cplx(0.0));
    CHECK(x.mat(0, 1) == cplx(1.0));
    CHECK(x.mat(1, 0) == cplx(1.0));
    CHECK(x.support == 1u);

    const Operator xi = pauli("XI");
    CHECK(xi.mat.rows() == 4);
    CHECK(xi.support == 1u);  // qubit 0 only
    CHECK((xi.mat - CMat::kron(sigma_x(), CMat::identity(2))).max_abs() == 0.0);

    const Operator zz = pauli("ZZ");
    CHECK((zz.mat * zz.mat - CMat::identity(4)).max_abs() == 0.0);

    CHECK_THROWS_WITH_AS(pauli("XQ"), doctest::Contains("position 1"), Rejection);
}

TEST_CASE("embedding acts as identity outside the declared support") {
    // Embed sigma_y on qubit 1 of 3; tracing out the complement returns the
    // local matrix times 2^{|complement|}.
    const Operator op = embed(sigma_y(), {1}, 3);
    CHECK(op.support == 2u);
    const CMat local = partial_trace(op.mat, 3, 2u);
    CHECK((local - cplx(4.0) * sigma_y()).max_abs() < 1e-13);
    // And the full matrix equals the kron product at the right slot.
    const CMat expect = CMat::kron(CMat::kron(CMat::identity(2), sigma_y()), CMat::identity(2));
    CHECK((op.mat - expect).max_abs() == 0.0);
}

TEST_CASE("partial trace keeps the right marginal") {
    const CMat m = CMat::kron(sigma_z(), sigma_x());
    // keep qubit 0: tr_1(Z (x) X) = Z * tr(X) = 0
    CHECK(partial_trace(m, 2, 1u).max_abs() == 0.0);
    const CMat m2 = CMat::kron(sigma_z(), CMat::identity(2));
    CHECK((partial_trace(m2, 2, 1u) - cplx(2.0) * sigma_z()).max_abs() == 0.0);
}

TEST_CASE("schedules evaluate per variant") {
    const CMat z = sigma_z();

    SUBCASE("constant") {
        const Schedule s = Schedule::constant(z, 0.0, 10.0);
        CHECK((s.hamiltonian(3.7) - z).max_abs() == 0.0);
        CHECK_THROWS_AS(s.hamiltonian(11.0), Rejection);
    }

    SUBCASE("gaussian pulse value at center") {
        // f(0) = alpha / (sqrt(2 pi) t1) with alpha = pi, t1 = 1.
        GaussianPulse p{0.0, 1.0, std::numbers::pi, cplx(0.5) * z};
        const Schedule s = Schedule::gaussian_pulses({p}, -8.0, 8.0);
        const CMat h0 = s.hamiltonian(0.0);
        const double expect = std::numbers::pi / std::sqrt(2.0 * std::numbers::pi);
        CHECK((h0 - cplx(0.5 * expect) * z).max_abs() < 1e-14);
    }

    SUBCASE("bangbang vanishes at the cosine zero") {
        const double omega = 3.0;
        const Schedule s = Schedule::bangbang(z, omega, 0.0, 10.0);
        CHECK(s.hamiltonian(0.5 * std::numbers::pi / omega).max_abs() < 1e-14);
        CHECK((s.hamiltonian(0.0) - z).max_abs() == 0.0);
    }

    SUBCASE("kicked variant is a delta train: zero between kicks") {
        const Schedule s = Schedule::kicked({{1.0, sigma_x()}}, 0.5, 0.0, 3.0);
        CHECK(s.hamiltonian(0.4).max_abs() == 0.0);
    }
}

TEST_CASE("pulse area equals the action under the truncation window") {
    for (double alpha : {0.3, 1.0, std::numbers::pi}) {
        for (double t1 : {0.5, 1.0, 2.0}) {
            GaussianPulse p{0.0, t1, alpha, cplx(0.5) * sigma_z()};
            const QuadGrid g = panels_uniform(-8.0 * t1, 8.0 * t1, 64, 10);
            double area = 0.0;
            for (std::size_t i = 0; i < g.size(); ++i) area += g.w[i] * p.envelope(g.x[i]);
            CHECK(std::abs(area - alpha) < 1e-8);
        }
    }
}

TEST_CASE("hamiltonian evaluations are hermitian for random schedule params") {
    Rng rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        const double a = rng.uniform(0.2, 3.0), t1 = rng.uniform(0.3, 2.0);
        GaussianPulse p1{rng.uniform(-1.0, 1.0), t1, a, cplx(0.5) * sigma_z()};
        GaussianPulse p2{rng.uniform(-1.0, 1.0), t1, a, cplx(0.7) * sigma_x()};
        const Schedule s = Schedule::gaussian_pulses({p1, p2}, -20.0, 20.0);
        const CMat h = s.hamiltonian(rng.uniform(-19.0, 19.0));
        CHECK(h.hermiticity_defect() < 1e-12);
    }
}
