from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpf

from sce_lab.precision import PrecisionPolicy
from sce_lab.quartic import (MomentSchedule, PropositionVerdict, QuarticSCEParams, Well,
                             alpha_critical_quartic, alpha_star_quartic, appendix_alpha_critical,
                             appendix_alpha_star, coefficient_peak_indices, dw_critical_order,
                             error_bound_quartic, g_selfconsistent, g_selfconsistent_dw,
                             lnQ_limits, proposition_case_check, rate_bound_A, sce_coefficient,
                             sce_partition_quartic)
from sce_lab.special import exact_Z_quartic


def _eval(g, N, M, well=Well.SINGLE, target=24):
    return sce_partition_quartic(QuarticSCEParams(
        g=g, N=N, M=M, well=well, precision=PrecisionPolicy.for_target(target)))


# --- the self-consistent harmonic strength ---------------------------------

def test_G_at_zero_coupling_is_one():
    for M in (0, 1, mpf("7.5")):
        assert g_selfconsistent(M, 0) == 1


def test_G_closed_form_value():
    # direct high-precision evaluation of 1/2 + sqrt(65)/2
    with mp.workdps(50):
        expected = mpf(1) / 2 + mp.sqrt(65) / 2
        assert abs(g_selfconsistent(2, 1) - expected) < mpf("1e-47")


def test_G_eliminates_inner_denominator_exactly():
    with mp.workdps(60):
        g, M = mpf(1), mpf(2)
        G = g_selfconsistent(M, g)
        assert abs((1 - G) * G / (4 * g) + (M + 2)) < mpf("1e-55")


@given(st.floats(0.001, 50), st.floats(0, 40))
@settings(max_examples=40, deadline=None)
def test_G_identity_property(g, M):
    with mp.workdps(40):
        g, M = mpf(g), mpf(M)
        G = g_selfconsistent(M, g)
        assert G > 1
        assert abs((1 - G) * G / (4 * g) + (M + 2)) < mpf("1e-30") * (M + 2)


def test_G_double_well_branch():
    with mp.workdps(40):
        assert abs(g_selfconsistent_dw(2, 1) - (-mpf(1) / 2 + mp.sqrt(65) / 2)) < mpf("1e-37")
        # g -> 0+ limit is 0, with leading slope 4 g (M+2)
        for g in (mpf("1e-6"), mpf("1e-9")):
            G = g_selfconsistent_dw(3, g)
            assert 0 < G < mpf("1e-3")
            assert abs(G / (4 * g * 5) - 1) < 100 * g
        assert g_selfconsistent_dw(7, mpf("0.2")) > 0


# --- coefficients ------------------------------------------------------------

def test_coefficient_n0_is_sqrt_pi():
    with mp.workdps(40):
        for K in (1, 10, 1000):
            assert abs(sce_coefficient(0, K, dps=40) - mp.sqrt(mp.pi)) < mpf("1e-36")


def test_coefficient_large_K_limit():
    # K >> n: S_{n,K} -> Gamma(n+1/2)/n!
    n = 3
    with mp.workdps(40):
        limit = mp.gamma(n + mpf(1) / 2) / mp.factorial(n)
        val = sce_coefficient(n, mpf(10) ** 6, dps=40)
        assert abs(val / limit - 1) < mpf("0.01")


def test_coefficient_representations_agree_at_60_digits():
    # the two in-module representations are mutual oracles
    with mp.workdps(80):
        val = sce_coefficient(5, 7, dps=60, compare_digits=60)
        # frozen via the direct alternating sum at 100 digits
        acc = mpf(0)
        for l in range(6):
            acc += (-1) ** l * mp.binomial(5, l) * mp.gamma(5 + l + mpf(1) / 2) / (mp.factorial(5) * mpf(7) ** l)
        assert abs(val / acc - 1) < mpf("1e-58")


def test_coefficient_agreement_sweep():
    for K in (1, 10, 100):
        for n in range(0, 41, 8):
            sce_coefficient(n, K, dps=30, compare_digits=28)  # raises on disagreement


# --- partial sums -------------------------------------------------------------

def test_order_zero_value():
    with mp.workdps(40):
        ev = _eval(1, 0, 4)
        G = g_selfconsistent(4, 1)
        assert abs(ev.value.value - mp.sqrt(2 * mp.pi / G)) < mpf("1e-30")


def test_order_one_closed_form():
    # first-order value: sqrt(2/G) Gamma(1/2) (1 + ((1-1/G) - 6g/G^2)/2),
    # equal to the n <= 1 truncation and to the first-order integral
    with mp.workdps(60):
        g = mpf(1)
        M = mpf(4) / 3
        G = g_selfconsistent(M, g)
        expected = mp.sqrt(2 / G) * mp.gamma(mpf(1) / 2) * (1 + ((1 - 1 / G) - 6 * g / G ** 2) / 2)
        ev = _eval(g, 1, M)
        assert abs(ev.value.value - expected) < mpf("1e-45")
        # and the integral oracle: int e^{-G x^2/2} (1 - ((1-G)x^2/2 + g x^4)) dx
        oracle = mp.sqrt(2 * mp.pi / G) * (1 - (1 - G) / (2 * G) - 3 * g / G ** 2)
        assert abs(ev.value.value - oracle) < mpf("1e-45")


def test_zero_coupling_gives_gaussian_for_all_orders():
    with mp.workdps(40):
        for N in (0, 1, 5, 17):
            ev = _eval(0, N, mpf(N))
            assert abs(ev.value.value - mp.sqrt(2 * mp.pi)) < mpf("1e-35")


def test_terms_sum_to_value_exactly():
    ev = _eval(1, 13, mpf(52) / 3)
    with mp.workdps(ev.working_digits):
        acc = mpf(0)
        for t in ev.terms:
            acc += t
        assert acc == ev.value.value


def test_convergence_to_oracle_moderate_order():
    g = mpf(1)
    with mp.workdps(90):
        z = exact_Z_quartic(g, dps=90)
        ev = _eval(g, 61, mpf(4) * 61 / 3, target=40)
        rel = abs(ev.value.value / z - 1)
        assert rel < mpf("1e-17")
        assert rel < ev.remainder_bound


def test_double_well_structural_identity():
    # double-well path == single-well machinery with base (1+1/G_dw),
    # evaluated on a shared coefficient table
    g, N, M = mpf("0.05"), 9, mpf(12)
    ev = _eval(g, N, M, well=Well.DOUBLE)
    with mp.workdps(ev.working_digits):
        G = g_selfconsistent_dw(M, g)
        base = 1 + 1 / G
        acc = mpf(0)
        for n in range(N + 1):
            s_n = sce_coefficient(n, M + 2, dps=ev.working_digits,
                                  compare_digits=ev.working_digits - 10)
            acc += base ** n * s_n
        acc *= mp.sqrt(2 / G)
        assert abs(acc / ev.value.value - 1) < mpf(10) ** (-(ev.working_digits - 15))


# --- the remainder bound -------------------------------------------------------

def test_bound_exceeds_error_on_small_grid():
    with mp.workdps(80):
        for g in (mpf("0.1"), mpf(1), mpf(10)):
            z = exact_Z_quartic(g, dps=80)
            for N in range(5, 26, 4):
                M = mpf(4) * N / 3
                err = abs(_eval(g, N, M, target=30).value.value - z)
                assert err <= error_bound_quartic(N, M, g), (g, N)


def test_loosened_bound_is_coupling_free():
    b1 = error_bound_quartic(20, 25, 1, loosened=True)
    b2 = error_bound_quartic(20, 25, 100, loosened=True)
    assert b1 == b2
    assert error_bound_quartic(20, 25, 1) < b1


def test_bound_diverges_for_cubic_moment_growth():
    vals = [error_bound_quartic(N, mpf(N) ** 3, 1) for N in (10, 20, 40)]
    assert vals[0] < vals[1] < vals[2]


# --- rates and critical ratios -------------------------------------------------

def test_critical_and_optimal_ratios():
    assert abs(alpha_critical_quartic() - mpf("0.976")) < mpf("0.002")
    assert abs(alpha_star_quartic() - mpf("1.317")) < mpf("0.002")


def test_rate_bound_values():
    assert abs(rate_bound_A(1) - mpf("0.018")) < mpf("0.001")
    assert abs(rate_bound_A(2) - mpf("0.176")) < mpf("0.001")
    assert abs(rate_bound_A(mpf(4) / 3) - mpf("0.243")) < mpf("0.001")


def test_rate_bound_continuous_at_optimum():
    astar = alpha_star_quartic()
    eps = mpf("1e-9")
    assert abs(rate_bound_A(astar - eps) - rate_bound_A(astar + eps)) < mpf("1e-7")
    # and the common value is the certified floor
    assert abs(rate_bound_A(astar + eps) - mpf("0.245")) < mpf("0.002")


def test_rate_bound_positive_above_critical_and_raises_below():
    for a in ("0.98", "1.1", "1.317", "2", "10"):
        assert rate_bound_A(mpf(a)) > 0
    with pytest.raises(ValueError):
        rate_bound_A(mpf("0.975"))


def test_appendix_constants():
    assert abs(appendix_alpha_critical() - mpf("0.895")) < mpf("0.005")
    astar = appendix_alpha_star()
    assert abs(astar - mpf("1.325")) < mpf("0.005")
    rate = -lnQ_limits(astar)[0] / mp.log(10)
    assert abs(rate - mpf("0.288")) < mpf("0.005")


def test_peak_indices_straddle_the_alternating_window():
    # s- < n always; s+ > 2n strictly whenever K > 1 (equality at K = 1)
    for n in (1, 5, 20, 40):
        for K in (1, 10, 100, 1000):
            s_minus, s_plus = coefficient_peak_indices(n, K)
            assert s_minus < n
            assert s_plus >= 2 * n
            if K > 1:
                assert s_plus > 2 * n


def test_dw_critical_order_examples():
    assert dw_critical_order(mpf(4) / 3, mpf("0.2")) <= 1
    # g-scaling: N_c ~ g^(-1/2)
    r = dw_critical_order(mpf(4) / 3, mpf("0.01")) / dw_critical_order(mpf(4) / 3, mpf("0.04"))
    assert abs(r - 2) < mpf("1e-10")
    # finite at the critical edge (the log factor stays away from zero),
    # and monotone increasing in alpha per the formula: the 1/sqrt(alpha)
    # factor loses to the shrinking |ln(alpha/(alpha+1))|
    a_edge = alpha_critical_quartic() + mpf("1e-6")
    assert mp.isfinite(dw_critical_order(a_edge, 1))
    assert dw_critical_order(a_edge, 1) < dw_critical_order(2, 1) < dw_critical_order(10, 1)


# --- even/odd optimum behavior --------------------------------------------------

def test_even_order_dips_below_odd_near_optimum():
    g = mpf(1)
    grid = [mpf(1) + mpf(k) / 20 for k in range(0, 13)]   # 1.0 .. 1.6
    with mp.workdps(80):
        z = exact_Z_quartic(g, dps=80)
        best = {}
        for N in (20, 21):
            errs = [abs(_eval(g, N, a * N, target=30).value.value / z - 1) for a in grid]
            best[N] = min(errs)
        assert best[20] < best[21]


# --- proposition phase diagram (smoke level; deep grid in acceptance) -----------

def test_proposition_divergent_case_small():
    cls = proposition_case_check(MomentSchedule.power(0.5), 1, N_max=31, dps=20)
    assert cls.verdict is PropositionVerdict.DIVERGENT_ALTERNATING


def test_proposition_convergent_case_small():
    cls = proposition_case_check(MomentSchedule.power(1.5), 1, N_max=40, dps=20, step=3)
    assert cls.verdict is PropositionVerdict.CONVERGENT


def test_proposition_inconclusive_flag():
    cls = proposition_case_check(MomentSchedule.power(2.5), 1, N_max=12, dps=20)
    assert cls.verdict is PropositionVerdict.INCONCLUSIVE


def test_moment_schedules():
    lin = MomentSchedule.linear(Fraction(4, 3))
    assert lin.moment(9) == 12
    pw = MomentSchedule.power(2.5)
    with mp.workdps(30):
        assert abs(pw.moment(4) - 32) < mpf("1e-25")
    ex = MomentSchedule.explicit([0, 1, 4, 9])
    assert ex.moment(3) == 9
    with pytest.raises(ValueError):
        MomentSchedule.linear(0)
