#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "qnm/errors.hpp"
#include "qnm/quadrature.hpp"
#include "qnm/reservoir.hpp"

using namespace qnm;

namespace {

// Independent oracle: direct quadrature of Int R(omega) e^{-i omega t} domega
// on a fine grid, regulated by e^{-eps|omega|}.
cplx ft_oracle(const ReservoirModel& m, double t, double eps, double wlo, double whi,
               int panels = 2048, int order = 8) {
    const QuadGrid g = panels_uniform(wlo, whi, panels, order);
    cplx s{};
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double w = g.x[i];
        s += g.w[i] * m.spectral_density(w) * std::exp(-eps * std::abs(w)) *
             std::exp(cplx(0.0, -w * t));
    }
    return s;
}

}  // namespace

TEST_CASE("spectral density closed forms") {
    const ReservoirModel vac = ReservoirModel::vacuum_cubic(1.0);
    CHECK(vac.spectral_density(2.0) == doctest::Approx(8.0));
    CHECK(vac.spectral_density(-1.0) == 0.0);

    const ReservoirModel lor = ReservoirModel::lorentzian(1.0, 1.0);
    CHECK(lor.spectral_density(0.0) == doctest::Approx(1.0));
    CHECK(lor.spectral_density(1.0) == doctest::Approx(0.5));

    // white(level): flat level/(2 pi) so that the time kernel is level*delta(t)
    const ReservoirModel wh = ReservoirModel::white(3.0);
    CHECK(wh.spectral_density(17.0) == doctest::Approx(3.0 / (2.0 * std::numbers::pi)));
}

TEST_CASE("KMS detailed balance") {
    const ReservoirModel th1 = ReservoirModel::vacuum_cubic(1.0, 1.0);
    CHECK(th1.kms_ratio(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(th1.kms_ratio(0.0) == 1.0);
    const ReservoirModel th2 = ReservoirModel::vacuum_cubic(1.0, 2.0);
    CHECK(th2.kms_ratio(2.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

    // holds across a grid of frequencies
    for (double w : {0.25, 0.5, 1.5, 3.0, 6.0})
        CHECK(th2.kms_ratio(w) == doctest::Approx(std::exp(-w / 2.0)).epsilon(1e-10));

    // T = 0: positive-frequency query has zero numerator, negative rejects
    const ReservoirModel vac = ReservoirModel::vacuum_cubic(1.0);
    CHECK(vac.kms_ratio(1.0) == 0.0);
    CHECK_THROWS_AS(vac.kms_ratio(-1.0), Rejection);
}

TEST_CASE("vacuum autocorrelation: closed form, power law, 1/16 ratio") {
    const ReservoirModel vac = ReservoirModel::vacuum_cubic(1.0);
    const double eps = 1e-3;

    // closed form 6 R0 / (eps + i t)^4 against the quadrature oracle
    for (double t : {0.05, 0.3, 1.0}) {
        const cplx got = vac.autocorrelation(t, eps).value;
        const cplx oracle = ft_oracle(vac, t, eps, 0.0, 40.0 / eps, 40000, 6);
        CHECK(std::abs(got - oracle) < 1e-3 * std::abs(got));
        const cplx z(eps, t);
        CHECK(std::abs(got - 6.0 / (z * z * z * z)) < 1e-12 * std::abs(got));
    }

    // |C(2t)|/|C(t)| -> 1/16 for t >> eps
    const double c1 = std::abs(vac.autocorrelation(0.5, eps).value);
    const double c2 = std::abs(vac.autocorrelation(1.0, eps).value);
    CHECK(c2 / c1 == doctest::Approx(1.0 / 16.0).epsilon(1e-4));

    // log-log slope -4 +- 0.05 over one decade with t >> eps
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int npts = 12;
    for (int k = 0; k < npts; ++k) {
        const double t = 0.1 * std::pow(10.0, k / double(npts - 1));
        const double lx = std::log(t), ly = std::log(std::abs(vac.autocorrelation(t, eps).value));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double slope = (npts * sxy - sx * sy) / (npts * sxx - sx * sx);
    CHECK(slope == doctest::Approx(-4.0).epsilon(0.05 / 4.0));
}

TEST_CASE("lorentzian kernel against the numeric Fourier oracle") {
    const ReservoirModel lor = ReservoirModel::lorentzian(1.0, 1.0);
    // C(t) = pi D tau_c e^{-|t|/tau_c}; frozen oracle values at t = 0.5, 1, 2
    for (double t : {0.5, 1.0, 2.0}) {
        const cplx got = lor.autocorrelation(t, 0.0).value;
        const double expect = std::numbers::pi * std::exp(-t);
        CHECK(std::abs(got - cplx(expect)) < 1e-10);
        const cplx oracle = ft_oracle(lor, t, 0.0, -400.0, 400.0, 16384, 6);
        CHECK(std::abs(got - oracle) < 2e-3 * std::abs(got));
    }
    // C(0) = Int R (regulated): for the Lorentzian, pi D tau_c exactly
    CHECK(lor.autocorrelation(0.0, 0.0).value.real() == doctest::Approx(std::numbers::pi));
}

TEST_CASE("kernel conjugate symmetry C(-t) = conj(C(t))") {
    const double eps = 1e-3;
    for (const ReservoirModel& m :
         {ReservoirModel::vacuum_cubic(1.0), ReservoirModel::lorentzian(0.7, 1.3),
          ReservoirModel::vacuum_cubic(2.0, 1.5)}) {
        for (double t : {0.2, 1.0, 3.7}) {
            const cplx a = m.autocorrelation(t, eps).value;
            const cplx b = m.autocorrelation(-t, eps).value;
            CHECK(std::abs(b - std::conj(a)) < 1e-9 * std::max(1.0, std::abs(a)));
        }
    }
}

TEST_CASE("round trip: inverse transform of the kernel recovers R on a grid") {
    // Rhat(omega) = (1/2pi) Int C(t) e^{i omega t} dt vs the (regulated) density.
    const double eps = 1e-3;
    SUBCASE("lorentzian") {
        const ReservoirModel lor = ReservoirModel::lorentzian(1.0, 1.0);
        const QuadGrid tg = panels_uniform(-30.0, 30.0, 1200, 8);
        for (double w : {0.0, 0.5, 1.0, 2.0}) {
            cplx acc{};
            for (std::size_t i = 0; i < tg.size(); ++i)
                acc += tg.w[i] * lor.autocorrelation(tg.x[i], 0.0).value *
                       std::exp(cplx(0.0, w * tg.x[i]));
            const double rhat = acc.real() / (2.0 * std::numbers::pi);
            CHECK(std::abs(rhat - lor.spectral_density(w)) < 1e-3 * lor.spectral_density(0.0));
        }
    }
    SUBCASE("regulated vacuum") {
        const ReservoirModel vac = ReservoirModel::vacuum_cubic(1.0);
        const QuadGrid tg = panels_uniform(-60.0, 60.0, 4000, 8);
        for (double w : {1.0, 2.0, 3.0}) {
            cplx acc{};
            for (std::size_t i = 0; i < tg.size(); ++i)
                acc += tg.w[i] * vac.autocorrelation(tg.x[i], eps).value *
                       std::exp(cplx(0.0, w * tg.x[i]));
            const double rhat = acc.real() / (2.0 * std::numbers::pi);
            const double target = vac.spectral_density(w) * std::exp(-eps * w);
            CHECK(std::abs(rhat - target) < 1e-3 * target);
        }
    }
}

TEST_CASE("white kernel is a flagged delta, never a number") {
    const ReservoirModel wh = ReservoirModel::white(2.5);
    const KernelValue kv = wh.autocorrelation(0.3, 1e-3);
    CHECK(kv.is_delta);
    CHECK(kv.delta_weight == 2.5);
    const MemoryKernel k = wh.kernel(1e-3);
    CHECK(k.is_delta());
    CHECK_THROWS_AS(k(0.3), Rejection);
}

TEST_CASE("tabulated densities: load, interpolate, reject off-grid") {
    std::istringstream in("# omega R\n0.0 1.0\n1.0 2.0\n2.0 0.5 # trailing\n");
    const ReservoirModel tab = ReservoirModel::load_tabulated(in);
    CHECK(tab.spectral_density(0.5) == doctest::Approx(1.5));
    CHECK(tab.spectral_density(2.0) == doctest::Approx(0.5));
    CHECK_THROWS_AS(tab.spectral_density(2.1), Rejection);
    CHECK_THROWS_AS(tab.spectral_density(-0.1), Rejection);
}

TEST_CASE("admissibility per variant") {
    CHECK(ReservoirModel::vacuum_cubic(1.0).admissible());
    CHECK_FALSE(ReservoirModel::white(1.0).admissible());
    CHECK_FALSE(ReservoirModel::lorentzian(1.0, 1.0).admissible());
    const ReservoirModel undeclared = ReservoirModel::tabulated({0.0, 1.0}, {0.0, 1.0});
    CHECK_THROWS_AS(undeclared.admissible(), Rejection);
    const ReservoirModel declared = ReservoirModel::tabulated({0.0, 1.0}, {0.0, 1.0}, 3.0);
    CHECK(declared.admissible());
}

TEST_CASE("thermal vacuum matches KMS across the kernel too") {
    // numeric kernel at T > 0 comes from quadrature; check C(-t) symmetry and
    // that the thermal density obeys R(-w) = e^{-w/T} R(w) on a grid.
    const ReservoirModel th = ReservoirModel::vacuum_cubic(1.0, 0.7);
    for (double w : {0.3, 0.9, 2.2})
        CHECK(th.spectral_density(-w) ==
              doctest::Approx(std::exp(-w / 0.7) * th.spectral_density(w)).epsilon(1e-10));
}
