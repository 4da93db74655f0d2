import math

import pytest

import radpauli as rp


def test_half_integer_bessel():
    z = 1.7
    assert rp.specfun.bessel_k(0.5, z) == pytest.approx(math.sqrt(math.pi / (2 * z)) * math.exp(-z), rel=1e-12)
    assert rp.specfun.wronskian_residual(0.3, 2.0) < 1e-12


def test_profiles_and_flux():
    assert rp.flux_alpha(rp.FieldProfile.gaussian_with_flux(0.4)) == pytest.approx(0.4, rel=1e-10)
    assert rp.FieldProfile.ac_circle(0.5).kind == "ac-circle"
    assert rp.potential_h(rp.FieldProfile.ac_circle(0.5), 4.0) == pytest.approx(0.5 * math.log(4.0))


def test_kernel_symmetry():
    a = rp.resolvent_kernel(0.5, 1.0, 0.5, 2.0)
    b = rp.resolvent_kernel(0.5, 1.0, 2.0, 0.5)
    assert a == pytest.approx(b, rel=1e-14)


def test_closed_forms():
    assert rp.q_alpha(0.5) == pytest.approx(1 / 17)
    assert rp.theta_formula(1.0) == pytest.approx(8 / 9)
    assert rp.one_term_rate(0.5, rp.FailureFamily.WEAK) == pytest.approx(1.0)


def test_lt_report():
    opt = rp.LTOptions()
    opt.r_max = 100.0
    opt.h0 = 5e-3
    opt.grading = 1.05
    r = rp.lt_report(rp.FieldProfile.ac_circle(0.5), rp.RadialPotential.step_well(5.0), 1.0, opt)
    assert r.lhs > 0
    assert r.ratio == pytest.approx(r.lhs / (r.term1 + r.term2))


def test_errors_map_to_python():
    with pytest.raises(ValueError, match="below critical exponent"):
        rp.lt_report(rp.FieldProfile.ac_circle(0.6), rp.RadialPotential.step_well(1.0), 0.5)
    with pytest.raises(ValueError):
        rp.q_alpha(1.0)


def test_birman_schwinger():
    with pytest.raises(ValueError):
        rp.birman_schwinger_kappa(0.5, rp.RadialPotential.zero())
    assert rp.birman_schwinger_kappa(0.5, rp.RadialPotential.step_well(10.0)) > 0
