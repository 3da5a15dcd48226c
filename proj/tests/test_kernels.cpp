#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "qnm/kernels.hpp"
#include "qnm/rng.hpp"

using namespace qnm;
using kernels::cplx;

namespace {

std::vector<cplx> random_vec(Rng& rng, std::size_t n) {
    std::vector<cplx> v(n);
    for (auto& z : v) z = cplx(rng.gaussian(), rng.gaussian());
    return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

// Dispatched kernels must agree with the scalar reference to rounding, for
// assorted lengths including the SIMD tail.
TEST_CASE("dispatched kernels match scalar reference") {
    Rng rng(20240917);
    INFO("active isa: ", kernels::active_isa());
    for (std::size_t n : {1u, 2u, 3u, 7u, 16u, 33u, 256u, 1001u}) {
        const auto x = random_vec(rng, n);
        const cplx a(rng.gaussian(), rng.gaussian());
        const double scale = 64.0 * n;

        auto y1 = random_vec(rng, n);
        auto y2 = y1;
        kernels::caxpy(y1.data(), a, x.data(), n);
        kernels::scalar::caxpy(y2.data(), a, x.data(), n);
        CHECK(max_diff(y1, y2) < 1e-14 * scale);

        y2 = y1;
        kernels::caxpyc(y1.data(), a, x.data(), n);
        kernels::scalar::caxpyc(y2.data(), a, x.data(), n);
        CHECK(max_diff(y1, y2) < 1e-14 * scale);

        y2 = y1;
        kernels::cscal(y1.data(), a, n);
        kernels::scalar::cscal(y2.data(), a, n);
        CHECK(max_diff(y1, y2) < 1e-14 * scale);

        const auto z = random_vec(rng, n);
        CHECK(std::abs(kernels::cdotc(y1.data(), z.data(), n) -
                       kernels::scalar::cdotc(y1.data(), z.data(), n)) < 1e-13 * scale);
        CHECK(std::abs(kernels::cdotu(y1.data(), z.data(), n) -
                       kernels::scalar::cdotu(y1.data(), z.data(), n)) < 1e-13 * scale);

        const double* d = reinterpret_cast<const double*>(x.data());  // reuse as real weights
        y2 = y1;
        kernels::diag_axpy(y1.data(), a, d, z.data(), n);
        kernels::scalar::diag_axpy(y2.data(), a, d, z.data(), n);
        CHECK(max_diff(y1, y2) < 1e-13 * scale);
    }
}

TEST_CASE("rank-1 updates match scalar reference") {
    Rng rng(7);
    for (std::size_t n : {2u, 5u, 16u, 37u}) {
        const auto v = random_vec(rng, n);
        const auto u = random_vec(rng, n);
        std::vector<cplx> c1(n * n), c2(n * n);
        kernels::rank1_herm(c1.data(), 0.75, v.data(), n);
        kernels::scalar::rank1_herm(c2.data(), 0.75, v.data(), n);
        CHECK(max_diff(c1, c2) < 1e-13 * n);

        const cplx w(0.3, -0.2);
        kernels::rank1(c1.data(), w, u.data(), v.data(), n);
        kernels::scalar::rank1(c2.data(), w, u.data(), v.data(), n);
        CHECK(max_diff(c1, c2) < 1e-13 * n);
    }
}

TEST_CASE("kernel semantics") {
    // caxpy against direct arithmetic
    std::vector<cplx> y{cplx(1, 1), cplx(2, -1)};
    const std::vector<cplx> x{cplx(0, 1), cplx(1, 0)};
    kernels::caxpy(y.data(), cplx(2, 0), x.data(), 2);
    CHECK(y[0] == cplx(1, 3));
    CHECK(y[1] == cplx(4, -1));

    // cdotc conjugates the left argument
    const std::vector<cplx> a{cplx(0, 1)};
    const std::vector<cplx> b{cplx(0, 1)};
    CHECK(kernels::cdotc(a.data(), b.data(), 1) == cplx(1, 0));
    CHECK(kernels::cdotu(a.data(), b.data(), 1) == cplx(-1, 0));

    // rank1_herm produces a Hermitian accumulation
    Rng rng(11);
    const auto v = random_vec(rng, 6);
    std::vector<cplx> c(36);
    kernels::rank1_herm(c.data(), 1.5, v.data(), 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            CHECK(std::abs(c[i * 6 + j] - std::conj(c[j * 6 + i])) < 1e-14);
}

TEST_CASE("force_scalar switches the table") {
    const std::string before = kernels::active_isa();
    kernels::force_scalar(true);
    CHECK(std::string(kernels::active_isa()) == "scalar");
    kernels::force_scalar(false);
    CHECK(std::string(kernels::active_isa()) == before);
}
