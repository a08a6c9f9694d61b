import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpf

from sce_lab.precision import (BigComplex, BigReal, MIN_DIGITS, PrecisionError, PrecisionPolicy,
                               stable_to_target)


def test_min_digits_enforced():
    # the raw constructor rejects sub-minimum precision; the convenience
    # constructor clamps up to the floor instead
    with pytest.raises(ValueError):
        BigReal(mpf(1), 8)
    assert BigReal.of("1.5", 8).precision_digits == MIN_DIGITS


def test_policy_requires_three_times_target():
    PrecisionPolicy(20, 60)
    with pytest.raises(ValueError):
        PrecisionPolicy(20, 59)
    pol = PrecisionPolicy.for_target(25)
    assert pol.working_digits == 75
    assert pol.escalated().working_digits == 100


@given(st.integers(MIN_DIGITS, 60), st.integers(MIN_DIGITS, 60))
@settings(max_examples=30, deadline=None)
def test_arithmetic_carries_max_precision(d1, d2):
    a = BigReal.of("1.25", d1)
    b = BigReal.of("2.5", d2)
    assert (a + b).precision_digits == max(d1, d2)
    assert (a * b).precision_digits == max(d1, d2)
    assert (a / b).precision_digits == max(d1, d2)


def test_bigreal_matches_exact_rational_arithmetic():
    a = BigReal.of("0.1", 40)
    b = BigReal.of("0.2", 40)
    c = a + b
    with mp.workdps(40):
        assert abs(c.value - mpf(3) / 10) < mpf(10) ** -38


def test_bigcomplex_equal_precision_invariant():
    with pytest.raises(ValueError):
        BigComplex(BigReal.of(1, 20), BigReal.of(2, 24))


@given(st.floats(-3.14159, 3.14159), st.floats(0.01, 100.0))
@settings(max_examples=60, deadline=None)
def test_principal_branch_quarter_argument(phi, r):
    z = BigComplex.of(mp.mpc(r * mp.cos(phi), r * mp.sin(phi)), 30)
    root = z.root(4)
    assert abs(root.arg().value - z.arg().value / 4) < mpf("1e-25")


def test_fourth_root_arg_on_cut_edge():
    # arg z = pi exactly maps to pi/4
    z = BigComplex.of(-2, 30)
    assert abs(z.root(4).arg().value - mp.pi / 4) < mpf("1e-25")


def test_stability_helper_detects_instability():
    # a deliberately precision-dependent "function"
    def unstable(dps):
        return mpf(10) ** (-dps)

    with pytest.raises(PrecisionError):
        stable_to_target(unstable, 16, 48)

    def stable(dps):
        with mp.workdps(dps):
            return mp.sqrt(mpf(2))

    val = stable_to_target(stable, 16, 48)
    with mp.workdps(50):
        assert abs(val - mp.sqrt(2)) < mpf("1e-45")
