#include <cmath>
#include <numbers>

#include <doctest.h>

#include "radpauli/errors.hpp"
#include "radpauli/field.hpp"

using namespace radpauli;

#include "oracles/oracles.inc"

TEST_CASE("flux of the built-in profiles") {
    CHECK(flux_alpha(FieldProfile::gaussian_with_flux(0.37, 2.0)) == doctest::Approx(0.37).epsilon(1e-12));
    CHECK(flux_alpha(FieldProfile::gaussian(1.0, 1.0)) == doctest::Approx(0.5).epsilon(1e-12));
    // \int_0^1 (1-u^2)^2 u du = 1/6
    CHECK(flux_alpha(FieldProfile::compact_bump(6.0, 1.0)) == doctest::Approx(1.0).epsilon(1e-12));
    // \int_0^inf (1+u)^{-3} u du = 1/2
    CHECK(flux_alpha(FieldProfile::power_tail(2.0, 1.0, 3.0)) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(flux_alpha(FieldProfile::ac_circle(-0.4)) == -0.4);
    CHECK(flux_alpha(FieldProfile::zero()) == 0.0);
}

TEST_CASE("non-integrable tails are rejected") {
    CHECK_THROWS_AS(flux_alpha(FieldProfile::power_tail(1.0, 1.0, 2.0)), ContractError);
    CHECK_THROWS_AS(flux_alpha(FieldProfile::power_tail(1.0, 1.0, 1.5)), ContractError);
    CHECK_THROWS_AS(flux_alpha(FieldProfile::gaussian(1.0, 0.0)), DomainError);
}

TEST_CASE("h of the gaussian matches the mpmath table") {
    const FieldProfile p = FieldProfile::gaussian_with_flux(0.5);
    for (const auto& o : kGaussianHOracle) {
        CAPTURE(o.r);
        CHECK(potential_h(p, o.r) == doctest::Approx(o.h).epsilon(1e-10));
    }
    // h(0) = -gamma_E alpha / 2 for a unit gaussian
    CHECK(h_origin(p) == doctest::Approx(-std::numbers::egamma * 0.25).epsilon(1e-10));
}

TEST_CASE("sorted tabulation agrees with pointwise h") {
    const FieldProfile p = FieldProfile::power_tail(1.0, 0.5, 4.0);
    std::vector<double> r;
    for (int i = 0; i <= 60; ++i) r.push_back(1e-4 * std::pow(10.0, i / 10.0));
    const std::vector<double> h = potential_h_sorted(p, r);
    for (std::size_t i = 0; i < r.size(); i += 7) CHECK(h[i] == doctest::Approx(potential_h(p, r[i])).epsilon(1e-9));
    CHECK_THROWS_AS(potential_h_sorted(p, std::vector<double>{2.0, 1.0}), DomainError);
}

TEST_CASE("h of the circle is alpha ln(r/R) outside and zero inside") {
    const FieldProfile p = FieldProfile::ac_circle(0.6, 2.0);
    CHECK(potential_h(p, 1.0) == 0.0);
    CHECK(potential_h(p, 8.0) == doctest::Approx(0.6 * std::log(4.0)));
    CHECK(h_origin(p) == 0.0);
}

TEST_CASE("Laplacian of h is B") {
    const FieldProfile p = FieldProfile::gaussian(1.3, 1.5);
    for (double r : {0.3, 1.0, 2.2}) {
        const double d = 1e-3;
        const double hp = potential_h(p, r + d), h0 = potential_h(p, r), hm = potential_h(p, r - d);
        const double lap = (hp - 2 * h0 + hm) / (d * d) + (hp - hm) / (2 * d) / r;
        CHECK(lap == doctest::Approx(p.field(r)).epsilon(1e-5));
    }
}

TEST_CASE("asymptote and sup bounds") {
    const FieldProfile g = FieldProfile::gaussian_with_flux(0.7);
    const PotentialH t = tabulate_h(g, 1e4);
    const AsymptoteFit fit = alpha_from_h_asymptote(t);
    CHECK(fit.alpha == doctest::Approx(0.7).epsilon(1e-3));
    CHECK_FALSE(fit.poor_fit);
    CHECK(t.m_plus >= 1.0);
    CHECK(t.m_minus >= 1.0);

    const SupBounds c = sup_bounds_m(FieldProfile::ac_circle(0.5), 1e6);
    CHECK(c.m_plus == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(c.m_minus == doctest::Approx(std::pow(2.0, 0.5)).epsilon(1e-9));
}

TEST_CASE("slowly decaying tails trip the drift check") {
    CHECK_THROWS_AS(sup_bounds_m(FieldProfile::power_tail(1.0, 1.0, 2.05), 1e4), ContractError);
}

TEST_CASE("rescaling keeps the flux and moves R to 1") {
    const FieldProfile p = FieldProfile::gaussian_with_flux(0.3, 4.0);
    const FieldProfile q = rescale_to_unit_R(p);
    CHECK(q.scale == 1.0);
    CHECK(flux_alpha(q) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(potential_h(q, 0.5) - h_origin(q) == doctest::Approx(potential_h(p, 2.0) - h_origin(p)).epsilon(1e-10));
}

TEST_CASE("kind names round-trip") {
    for (auto k : {FieldKind::Zero, FieldKind::Gaussian, FieldKind::CompactBump, FieldKind::PowerTail, FieldKind::AcCircle})
        CHECK(field_kind_from_string(to_string(k)) == k);
    CHECK_THROWS_AS(field_kind_from_string("dipole"), DomainError);
}
