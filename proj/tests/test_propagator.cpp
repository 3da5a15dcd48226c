#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "qnm/eig.hpp"
#include "qnm/errors.hpp"
#include "qnm/operators.hpp"
#include "qnm/propagator.hpp"
#include "qnm/rng.hpp"

using namespace qnm;

TEST_CASE("constant schedule: U = exp(-i H T)") {
    const double omega0 = 1.3, T = 2.0;
    const CMat h = cplx(0.5 * omega0) * sigma_z();
    const Propagator p(Schedule::constant(h, 0.0, T));
    const CMat u = p.unitary(0.0, T);
    const CMat expect = expm_hermitian(h, cplx(0.0, -T));
    CHECK((u - expect).max_abs() < 1e-10);
    // reversing arguments gives the adjoint
    CHECK((p.unitary(T, 0.0) - u.adjoint()).max_abs() < 1e-12);
}

TEST_CASE("kicked schedule applies exact factors") {
    const double tau = 0.7;
    const CMat gen = cplx(0.3) * sigma_x();
    const Schedule s = Schedule::kicked({{1.0, gen}}, tau, 0.0, 2.0);
    const Propagator p(s, 0.25);
    const CMat u = p.unitary(0.0, 2.0);
    CHECK((u - expm_hermitian(gen, cplx(0.0, -tau))).max_abs() < 1e-12);
    // before the kick: identity
    CHECK((p.unitary(0.0, 0.5) - CMat::identity(2)).max_abs() < 1e-12);
}

TEST_CASE("gaussian pi pulse rotates by pi about z") {
    GaussianPulse pulse{0.0, 1.0, std::numbers::pi, cplx(0.5) * sigma_z()};
    const Schedule s = Schedule::gaussian_pulses({pulse}, -8.0, 8.0);
    const Propagator p(s, 0.01);
    const CMat u = p.unitary(-8.0, 8.0);
    const CMat expect = expm_hermitian(sigma_z(), cplx(0.0, -0.5 * std::numbers::pi));
    CHECK((u - expect).max_abs() < 1e-6);
}

TEST_CASE("unitarity and composition on grid nodes") {
    GaussianPulse p1{-1.0, 0.8, 1.1, cplx(0.5) * sigma_z()};
    GaussianPulse p2{2.0, 0.5, 0.7, cplx(0.5) * sigma_x()};
    const Schedule s = Schedule::gaussian_pulses({p1, p2}, -8.0, 8.0);
    const Propagator p(s, 0.02);
    Rng rng(4);
    for (int k = 0; k < 12; ++k) {
        const double a = rng.uniform(-8.0, 8.0), b = rng.uniform(-8.0, 8.0);
        const CMat u = p.unitary(a, b);
        CHECK((u * u.adjoint() - CMat::identity(2)).max_abs() < 1e-10);
        const double mid = 0.5 * (a + b);
        const CMat comp = p.unitary(mid, b) * p.unitary(a, mid);
        CHECK((comp - u).max_abs() < 1e-9);
    }
    CHECK(p.diagnostics().richardson_defect < 1e-8);
}

TEST_CASE("heisenberg picture rotation against the closed form") {
    const double omega0 = 2.0;
    const CMat h = cplx(0.5 * omega0) * sigma_z();
    const Propagator p(Schedule::constant(h, 0.0, 4.0));
    // U(u,0)^dag sx U(u,0) = cos(w u) sx - sin(w u) sy for sz/2 generator
    for (double u : {0.25 * std::numbers::pi / omega0, 0.5 * std::numbers::pi / omega0}) {
        const CMat got = p.heisenberg(sigma_x(), u, 0.0);
        const CMat uex = expm_hermitian(h, cplx(0.0, -u));
        const CMat oracle = uex.adjoint() * sigma_x() * uex;
        CHECK((got - oracle).max_abs() < 1e-11);
        // spectrum preserved under conjugation
        const EigH e = eig_hermitian(got);
        CHECK(e.vals[0] == doctest::Approx(-1.0).epsilon(1e-10));
        CHECK(e.vals[1] == doctest::Approx(1.0).epsilon(1e-10));
    }
    // identity schedule leaves S alone
    const Propagator pid(Schedule::free(2, 0.0, 1.0));
    CHECK((pid.heisenberg(sigma_x(), 0.7, 0.0) - sigma_x()).max_abs() < 1e-12);
    // S commuting with H never moves
    CHECK((p.heisenberg(sigma_z(), 1.1, 0.0) - sigma_z()).max_abs() < 1e-11);
}

TEST_CASE("frequency components bucket by Bohr frequency") {
    const double omega0 = 1.7;
    const CMat h = cplx(0.5 * omega0) * sigma_z();

    SUBCASE("sigma_x splits into sigma+ and sigma-") {
        const FrequencyDecomposition fd = frequency_components(h, sigma_x());
        REQUIRE(fd.freqs.size() == 2);
        CHECK(fd.freqs[0] == doctest::Approx(-omega0));
        CHECK(fd.freqs[1] == doctest::Approx(omega0));
        // S(omega0) = |e><g| = sigma+ in this basis
        CHECK((fd.at(omega0, 1e-9) - sigma_plus()).max_abs() < 1e-12);
        CHECK((fd.at(-omega0, 1e-9) - sigma_minus()).max_abs() < 1e-12);
        CHECK(fd.gap == doctest::Approx(omega0));
        // completeness
        CMat sum(2, 2);
        for (const CMat& c : fd.components) sum += c;
        CHECK((sum - sigma_x()).max_abs() < 1e-12);
    }

    SUBCASE("H = 0 gives a single omega = 0 component") {
        const FrequencyDecomposition fd = frequency_components(CMat::zero(2, 2), sigma_x());
        REQUIRE(fd.freqs.size() == 1);
        CHECK(fd.freqs[0] == 0.0);
        CHECK((fd.components[0] - sigma_x()).max_abs() < 1e-12);
    }

    SUBCASE("two qubits: components only at +-omega0") {
        const CMat h2 = cplx(0.5 * omega0) * (pauli("ZI").mat + pauli("IZ").mat);
        const FrequencyDecomposition fd = frequency_components(h2, pauli("XI").mat);
        REQUIRE(fd.freqs.size() == 2);
        CHECK(fd.freqs[0] == doctest::Approx(-omega0));
        CHECK(fd.freqs[1] == doctest::Approx(omega0));
        CMat sum(4, 4);
        for (const CMat& c : fd.components) sum += c;
        CHECK((sum - pauli("XI").mat).max_abs() < 1e-12);
    }
}

TEST_CASE("windowed transform: constant integrand peaks at omega = 0") {
    const double T = 6.0;
    const Propagator p(Schedule::free(2, 0.0, T));
    const std::vector<double> omegas{-2.0, -1.0, 0.0, 1.0, 2.0};
    const auto ys = spectral_function(p, sigma_x(), 0.0, T, omegas);
    // Y(0) = sx * T
    CHECK((ys[2] - cplx(T) * sigma_x()).max_abs() < 1e-8);
    // |Y(w)| = |sx| * |2 sin(wT/2)/w|
    const double expect = std::abs(2.0 * std::sin(1.0 * T / 2.0) / 1.0);
    CHECK(std::abs(ys[3](0, 1)) == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("windowed transform peaks at Bohr frequencies for static H") {
    const double omega0 = 1.0, T = 40.0;
    const CMat h = cplx(0.5 * omega0) * sigma_z();
    const Propagator p(Schedule::constant(h, 0.0, T));
    WindowedCoupling wc(p, sigma_x(), 0.0, T, 3.0);
    // Y(omega) = Int S(u) e^{-i omega u} du; sigma+ oscillates e^{+i w0 u},
    // so the peak sits at omega = +omega0 with the sigma+ component ~ T.
    const CMat peak = wc.transform(omega0);
    const CMat off = wc.transform(omega0 + 2.0);
    CHECK(std::abs(peak(0, 1)) > 0.9 * T);
    CHECK(std::abs(off(0, 1)) < 0.1 * T);
}

TEST_CASE("parseval: time mass equals frequency mass") {
    const double omega0 = 1.0, T = 30.0;
    const CMat h = cplx(0.5 * omega0) * sigma_z();
    const Propagator p(Schedule::constant(h, 0.0, T));
    WindowedCoupling wc(p, sigma_x(), 0.0, T, 6.0);
    // Int ||Y(w)||^2 dw / (2 pi) = Int ||S(u)||^2 du
    const QuadGrid wg = panels_uniform(-6.0, 6.0, 600, 10);
    double freq_mass = 0.0;
    for (std::size_t i = 0; i < wg.size(); ++i) {
        const CMat y = wc.transform(wg.x[i]);
        freq_mass += wg.w[i] * std::pow(y.fro_norm(), 2);
    }
    freq_mass /= 2.0 * std::numbers::pi;
    const double time_mass = wc.time_norm2();
    CHECK(std::abs(freq_mass - time_mass) < 2e-3 * time_mass);
}

TEST_CASE("aliasing guard rejects coarse explicit steps") {
    const Propagator p(Schedule::free(2, 0.0, 10.0));
    CHECK_THROWS_WITH_AS(WindowedCoupling(p, sigma_x(), 0.0, 10.0, 50.0, false, 0.5),
                         doctest::Contains("need dt"), Rejection);
    CHECK_THROWS_AS(spectral_function(p, sigma_x(), 0.0, 10.0, {-1.0, 0.0, 2.0}), Rejection);
}

TEST_CASE("bang-bang sidebands scale as omega_k / Omega") {
    const double omega0 = 1.0;
    const CMat h = cplx(0.5 * omega0) * sigma_z();
    auto sideband_amp = [&](double drive) {
        const double T = 80.0 * std::numbers::pi / drive;
        const Propagator p(Schedule::bangbang(h, drive, 0.0, T), 0.02 / drive, false);
        WindowedCoupling wc(p, sigma_x(), 0.0, T, 2.5 * drive);
        // first sideband of the sigma+ component at omega = -drive (phase
        // modulation puts harmonics at m*Omega; measure |entry(0,1)|/T)
        return std::abs(wc.transform(-drive)(0, 1)) / T;
    };
    const double a4 = sideband_amp(4.0);
    const double a8 = sideband_amp(8.0);
    CHECK(a8 / a4 == doctest::Approx(0.5).epsilon(0.1));
}
