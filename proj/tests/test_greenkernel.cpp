#include <cmath>

#include <doctest.h>

#include "radpauli/errors.hpp"
#include "radpauli/greenkernel.hpp"
#include "radpauli/spectral.hpp"

using namespace radpauli;

#include "oracles/oracles.inc"

TEST_CASE("kernel matches the ODE-built mpmath Green function") {
    for (const auto& o : kKernelOracle) {
        CAPTURE(o.alpha);
        CAPTURE(o.kappa);
        CAPTURE(o.r);
        CAPTURE(o.rp);
        CHECK(resolvent_kernel(o.alpha, o.kappa, o.r, o.rp) == doctest::Approx(o.kernel).epsilon(1e-10));
        CHECK(gamma_kernel(o.alpha, o.kappa, o.r, o.rp) == doctest::Approx(o.gamma).epsilon(1e-9));
    }
}

TEST_CASE("kernel is symmetric") {
    for (double a : {0.2, 0.9})
        for (auto [r, rp] : {std::pair{0.4, 3.0}, std::pair{0.9, 1.1}, std::pair{2.0, 7.0}}) {
            CHECK(resolvent_kernel(a, 0.8, r, rp) == doctest::Approx(resolvent_kernel(a, 0.8, rp, r)).epsilon(1e-14));
            CHECK(gamma_kernel(a, 0.8, r, rp) == doctest::Approx(gamma_kernel(a, 0.8, rp, r)).epsilon(1e-14));
        }
}

TEST_CASE("alpha = 0 reduces to the free radial kernel") {
    const CoefficientTriple c = coefficients(0.0, 1.3);
    CHECK(c.A == 1.0);
    CHECK(c.B_scaled == 0.0);
    CHECK(c.D_scaled == 0.0);
    CHECK(gamma_kernel(0.0, 1.3, 0.5, 2.0) == 0.0);
    CHECK(kernel_bound_ratio(0.0, 1.3, 0.5, 2.0) == 0.0);
}

TEST_CASE("grouped and direct coefficients agree where both are accurate") {
    for (double a : {0.1, 0.5, 0.9})
        for (double k : {0.05, 0.5, 3.0, 20.0}) {
            const CoefficientTriple g = coefficients(a, k), d = coefficients_direct(a, k);
            CAPTURE(a);
            CAPTURE(k);
            CHECK(g.A == doctest::Approx(d.A).epsilon(1e-10));
            CHECK(g.B_scaled == doctest::Approx(d.B_scaled).epsilon(1e-10));
            CHECK(g.D_scaled == doctest::Approx(d.D_scaled).epsilon(1e-9));
        }
}

TEST_CASE("coefficient limits") {
    for (double a : {0.1, 0.5, 0.9}) {
        CHECK(coefficients(a, 1e-6).A == doctest::Approx(A_small_kappa(a, 1e-6)).epsilon(1e-3));
        CHECK(f_g(a, 1e-8).g == doctest::Approx(g_small_kappa(a)).epsilon(1e-2));
        // corrections are O(kappa^{2a} ln kappa) and O(kappa^{2-2a}); only the trend is checked for a = 0.1
        const double e4 = std::abs(f_g(a, 1e-4).f / f_small_kappa(a, 1e-4) - 1.0);
        const double e8 = std::abs(f_g(a, 1e-8).f / f_small_kappa(a, 1e-8) - 1.0);
        CHECK(e8 < e4);
        if (a == 0.5) CHECK(e8 < 1e-6);
        CHECK(f_g(a, 60.0).f == doctest::Approx(f_large_kappa(a, 60.0)).epsilon(2e-2));
        CHECK(f_g(a, 60.0).g == doctest::Approx(g_large_kappa(a, 60.0)).epsilon(2e-2));
    }
    CHECK(f_small_kappa(0.5, 0.1) == doctest::Approx(2.0 * f_small_kappa_stated(0.5, 0.1)));
}

TEST_CASE("large kappa does not overflow") {
    const CoefficientTriple c = coefficients(0.5, 400.0);
    CHECK(std::isfinite(c.A));
    CHECK(std::isfinite(c.B_scaled));
    CHECK(std::isfinite(resolvent_kernel(0.5, 400.0, 1.5, 1.6)));
}

TEST_CASE("kernel is the inverse of the discrete operator") {
    const RadialGrid g = make_grid(60.0, 800, 1.01).refined();
    const ModeOperator op = assemble_T_alpha(g, 0.5);
    std::size_t j = 0;
    for (std::size_t i = 0; i < op.size(); ++i)
        if (std::abs(op.r[i] - 2.0) < std::abs(op.r[j] - 2.0)) j = i;
    const std::vector<double> col = resolvent_column(op, 1.0, j);
    for (double r : {0.1, 0.5, 1.0, 3.0, 6.0}) {
        std::size_t i = 0;
        for (std::size_t k = 0; k < op.size(); ++k)
            if (std::abs(op.r[k] - r) < std::abs(op.r[i] - r)) i = k;
        CHECK(col[i] == doctest::Approx(resolvent_kernel(0.5, 1.0, op.r[i], op.r[j])).epsilon(5e-3));
    }
}

TEST_CASE("sweep maxima are finite and the raw kernel outgrows the envelope") {
    const SweepRange small{1e-2, 3.0, 1e-1, 5.0, 3};
    const SweepMax m = kernel_sweep_max(0.5, small);
    CHECK(std::isfinite(m.gamma_ratio));
    CHECK(m.gamma_ratio > 0.0);
    CHECK(m.raw_ratio > m.gamma_ratio);
}

TEST_CASE("log spacing") {
    const auto x = log_space(1e-2, 1e2, 6);
    CHECK(x.size() == 25);
    CHECK(x.front() == 1e-2);
    CHECK(x.back() == 1e2);
    CHECK(x[6] == doctest::Approx(0.1));
    CHECK_THROWS_AS(log_space(0.0, 1.0, 3), DomainError);
}

TEST_CASE("domain checks") {
    CHECK_THROWS_AS(resolvent_kernel(0.5, 0.0, 1.0, 2.0), DomainError);
    CHECK_THROWS_AS(resolvent_kernel(1.5, 1.0, 1.0, 2.0), DomainError);
    CHECK_THROWS_AS(resolvent_kernel(0.5, 1.0, 0.0, 2.0), DomainError);
}
