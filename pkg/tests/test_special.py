import pytest
from mpmath import mp, mpc, mpf

from sce_lab.precision import BigComplex, BigReal
from sce_lab.special import (SpecialFunctionDomainError, airy_reference, bessel_I, bessel_K,
                             exact_Z_double_well, exact_Z_quartic, exp_integral_E1, gamma_fn,
                             quadrature_Z)


def test_gamma_half_is_sqrt_pi():
    g = gamma_fn(BigReal.of("0.5", 40))
    with mp.workdps(40):
        assert abs(g.value - mp.sqrt(mp.pi)) < mpf("1e-38")


def test_gamma_recurrence_at_50_digits():
    n = 7
    with mp.workdps(50):
        ratio = gamma_fn(mpf(n + 1)) / gamma_fn(mpf(n))
        assert abs(ratio - n) < mpf("1e-47")


def test_gamma_large_half_integer_vs_shift_recurrence():
    # oracle: Gamma(2n + 1/2) built from Gamma(1/2) by the exact recurrence
    n = 10
    with mp.workdps(60):
        acc = mp.sqrt(mp.pi)
        for k in range(2 * n):
            acc *= k + mpf(1) / 2
        direct = gamma_fn(mpf(2 * n) + mpf(1) / 2)
        assert abs(direct / acc - 1) < mpf("1e-55")


def test_gamma_pole_raises():
    with pytest.raises(SpecialFunctionDomainError):
        gamma_fn(0)
    with pytest.raises(SpecialFunctionDomainError):
        gamma_fn(-3)
    gamma_fn(mpf("-2.5"))  # between poles is fine


def test_gamma_reflection_consistency_complex():
    z = BigComplex.of(mpc("-1.3", "0.7"), 40)
    with mp.workdps(40):
        lhs = gamma_fn(z).value * gamma_fn(BigComplex.of(1 - z.value, 40)).value
        rhs = mp.pi / mp.sin(mp.pi * z.value)
        assert abs(lhs - rhs) < abs(rhs) * mpf("1e-36")


def test_bessel_wronskian_identity():
    t = mpf(2)
    with mp.workdps(40):
        h = mpf("1e-12")
        quarter = mpf(1) / 4
        kp = (bessel_K(quarter, t + h) - bessel_K(quarter, t - h)) / (2 * h)
        ip = (bessel_I(quarter, t + h) - bessel_I(quarter, t - h)) / (2 * h)
        w = bessel_I(quarter, t) * kp - ip * bessel_K(quarter, t)
        assert abs(w + 1 / t) < mpf("1e-20")


def test_bessel_domain():
    with pytest.raises(SpecialFunctionDomainError):
        bessel_K(mpf(1) / 4, 0)
    with pytest.raises(SpecialFunctionDomainError):
        bessel_I(mpf(1) / 4, -1)


def test_partition_closed_form_vs_quadrature_40_digits():
    for g in ("0.1", "1", "10"):
        z_closed = exact_Z_quartic(mpf(g), dps=60)
        z_quad = quadrature_Z(4, mpf(g), d=1, dps=60)
        with mp.workdps(60):
            assert abs(z_quad / z_closed - 1) < mpf("1e-40"), g


def test_partition_harmonic_limit():
    with mp.workdps(40):
        z = exact_Z_quartic(mpf("1e-12"), dps=40)
        assert abs(z / mp.sqrt(2 * mp.pi) - 1) < mpf("1e-10")
        assert exact_Z_quartic(0, dps=40) == mp.sqrt(2 * mp.pi)


def test_double_well_closed_form_vs_quadrature():
    g = mpf("0.01")
    z_closed = exact_Z_double_well(g, dps=50)
    z_quad = quadrature_Z(4, g, d=1, well="double", dps=50)
    with mp.workdps(50):
        assert abs(z_quad / z_closed - 1) < mpf("1e-30")


def test_quadrature_domain_errors():
    with pytest.raises(SpecialFunctionDomainError):
        quadrature_Z(4, 0, well="double", dps=30)
    with pytest.raises(SpecialFunctionDomainError):
        quadrature_Z(4, -1, dps=30)


def test_e1_against_quadrature_oracle():
    # oracle: direct tanh-sinh integration of e^-t / t on [1, inf)
    with mp.workdps(40):
        oracle = mp.quad(lambda t: mp.exp(-t) / t, [1, mp.inf])
        val = exp_integral_E1(mpf(1))
        assert abs(val - oracle) < mpf("1e-30")
        assert mp.nstr(val, 10) == "0.2193839344"


def test_e1_asymptotic_and_small_x():
    with mp.workdps(40):
        x = mpf(600)
        assert abs(x * mp.exp(x) * exp_integral_E1(x) - 1) < mpf("0.01")
        x = mpf("1e-8")
        assert abs(exp_integral_E1(x) + mp.log(x) + mp.euler) < mpf("1e-7")


def test_e1_principal_value_negative_axis():
    # PV E1(x) = -gamma - ln|x| - sum_k (-x)^k/(k k!); at x = -s the sum
    # runs over +s^k/(k k!), recovering -Ei(s)
    with mp.workdps(40):
        s = mpf(2)
        acc = -mp.euler - mp.log(s)
        term = mpf(1)
        for k in range(1, 60):
            term *= s / k
            acc -= term / k
        assert abs(exp_integral_E1(-s) - acc) < mpf("1e-30")
    with pytest.raises(SpecialFunctionDomainError):
        exp_integral_E1(0)


def test_airy_value_at_zero():
    with mp.workdps(50):
        expected = mpf(3) ** (mpf(-2) / 3) / mp.gamma(mpf(2) / 3)
        assert abs(airy_reference(mpf(0), prec=50) - expected) < mpf("1e-45")


def test_airy_defining_ode_residual():
    # oracle: the ODE w'' = z w itself, via a high-order central stencil
    z = mpc(2, 1)
    prec = 30
    with mp.workdps(3 * prec):
        h = mpf(10) ** (-prec // 3)
        vals = {k: airy_reference(z + k * h, prec=3 * prec) for k in (-2, -1, 0, 1, 2)}
        second = (-vals[2] + 16 * vals[1] - 30 * vals[0] + 16 * vals[-1] - vals[-2]) / (12 * h ** 2)
        resid = abs(second - z * vals[0]) / abs(vals[0])
        assert resid < mpf(10) ** (-prec)


def test_airy_schwarz_reflection():
    with mp.workdps(40):
        z = 8 * mp.exp(mpc(0, 1) * mp.pi / 5)
        lhs = airy_reference(mp.conj(z), prec=40)
        rhs = mp.conj(airy_reference(z, prec=40))
        assert abs(lhs - rhs) < abs(rhs) * mpf("1e-36")


def test_airy_matches_independent_implementation():
    # dual route: our Maclaurin series vs mpmath's own algorithm
    with mp.workdps(40):
        for z in (mpf(3), mpc(-5, 2), mpc(0, 8)):
            ours = airy_reference(z, prec=40)
            theirs = mp.airyai(z)
            assert abs(ours - theirs) < abs(theirs) * mpf("1e-36"), z


def test_quadrature_measures_and_doubling():
    # d = 1 doubles the half-line; d = 3 carries weight x^2
    with mp.workdps(30):
        full = quadrature_Z(4, 1, d=1, dps=30)
        half = mp.quad(lambda x: mp.exp(-x * x / 2 - x ** 4), [0, mp.inf])
        assert abs(full - 2 * half) < mpf("1e-25")
        wx2 = quadrature_Z(4, 1, d=3, dps=30)
        oracle = mp.quad(lambda x: x * x * mp.exp(-x * x / 2 - x ** 4), [0, mp.inf])
        assert abs(wx2 - oracle) < mpf("1e-25")


def test_precision_stability_probe_grid():
    # +10 working digits must not change the first target digits
    with mp.workdps(60):
        for fn in (lambda d: exact_Z_quartic(mpf("0.37"), dps=d),
                   lambda d: exp_integral_E1(BigReal.of("2.1", d)).value,
                   lambda d: bessel_K(mpf(1) / 4, BigReal.of("7.3", d)).value,
                   lambda d: airy_reference(mpf("1.7"), prec=d)):
            lo = fn(30)
            hi = fn(40)
            assert abs(lo - hi) < abs(hi) * mpf("1e-28")
