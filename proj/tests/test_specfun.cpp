#include <cmath>
#include <numbers>

#include <doctest.h>

#include "radpauli/errors.hpp"
#include "radpauli/specfun.hpp"

using namespace radpauli;
using namespace radpauli::specfun;

#include "oracles/oracles.inc"

TEST_CASE("scaled I and K match the mpmath table") {
    for (const auto& o : kBesselOracle) {
        CAPTURE(o.nu);
        CAPTURE(o.z);
        CHECK(bessel_i_scaled(o.nu, o.z) == doctest::Approx(o.i_scaled).epsilon(1e-10));
        CHECK(bessel_k_scaled(o.nu, o.z) == doctest::Approx(o.k_scaled).epsilon(1e-10));
    }
}

TEST_CASE("half-integer closed forms") {
    for (double z : {1e-4, 0.3, 1.0, 2.5, 7.0, 30.0}) {
        CAPTURE(z);
        const double k = std::sqrt(std::numbers::pi / (2.0 * z)) * std::exp(-z);
        CHECK(bessel_k(0.5, z) == doctest::Approx(k).epsilon(1e-12));
        CHECK(bessel_k(1.5, z) == doctest::Approx(k * (1.0 + 1.0 / z)).epsilon(1e-12));
        CHECK(bessel_i(0.5, z) == doctest::Approx(std::sqrt(2.0 / (std::numbers::pi * z)) * std::sinh(z)).epsilon(1e-12));
    }
}

TEST_CASE("Wronskian holds across the branch crossovers") {
    for (int j = 0; j <= 10; ++j) {
        const double nu = 0.1 * j;
        for (double z : {1e-6, 1e-3, 0.5, 1.999, 2.0, 2.001, 11.9, 12.0, 12.1, 50.0}) CHECK(wronskian_residual(nu, z) < 1e-9);
    }
}

TEST_CASE("branches agree where they meet") {
    for (double nu : {0.0, 0.3, 0.5, 1.0}) {
        CHECK(bessel_k_temme_scaled(nu, 2.0) == doctest::Approx(bessel_k_steed_scaled(nu, 2.0)).epsilon(1e-12));
        const double t = asymptotic_threshold(nu);
        CHECK(bessel_k_steed_scaled(nu, t) == doctest::Approx(bessel_k_asymptotic_scaled(nu, t)).epsilon(1e-10));
        CHECK(bessel_i_series_scaled(nu, t) == doctest::Approx(bessel_i_asymptotic_scaled(nu, t)).epsilon(1e-10));
    }
}

TEST_CASE("differences keep their leading digits at large argument") {
    const double z = 400.0;
    // e^{z}(K_a - K_b) ~ sqrt(pi/2z) (a^2 - b^2)/(2z)
    const double lead = std::sqrt(std::numbers::pi / (2.0 * z)) * (0.49 - 0.0) / (2.0 * z);
    CHECK(bessel_k_scaled_diff(0.7, 0.0, z) == doctest::Approx(lead).epsilon(5e-3));
    CHECK(bessel_i_scaled_diff(0.7, 0.0, z) == doctest::Approx(-lead / std::numbers::pi).epsilon(5e-3));
}

TEST_CASE("log gamma") {
    CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-12));
    CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-12));
    CHECK_THROWS_AS(log_gamma(0.0), DomainError);
    CHECK_THROWS_AS(log_gamma(-1.0), DomainError);
}

TEST_CASE("argument checks") {
    CHECK_THROWS_AS(bessel_k(0.5, 0.0), DomainError);
    CHECK_THROWS_AS(bessel_i(0.5, -1.0), DomainError);
    CHECK_THROWS_AS(bessel_k(2.5, 1.0), DomainError);
}
