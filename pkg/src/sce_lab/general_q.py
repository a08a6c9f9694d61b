"""Expansion for a general power-law well g |x|^q, q > 2, and its radial form.

With r = q/2 - 1 the order-N approximant reads

    Z^(N) = sqrt(2/G) sum_n (1-1/G)^n / n!
            sum_l (-1)^l C(n,l) (C_q(M)/M)^(-l) Gamma(1/2 + n + r l),

    C_q(M) = Gamma(M + q/2 + 1/2)/Gamma(M + 1/2) - Gamma(q/2 + 1/2)/Gamma(1/2),

and the moment condition fixing the rescaled harmonic strength becomes

    (G/2)^(q/2) - (G/2)^(q/2-1)/2 - g C_q(M)/M = 0,

solved on the G > 1 branch.  K = (C_q/M)^(1/r) generalizes the quartic
K = M + 2 (exactly recovered at q = 4) and K - M -> q^2/(8r) at large M.

Convergence bookkeeping: each remainder component scales like Q^N, and
with alpha = M/N the relevant bases are

    r > 1:   Q1 = (K v0/N') e^{(r-1)/r (1 - K v0/N')},  v0 the root of
             K/N' + r v0^(r-1) = 1/v0, and Q2 = alpha^-r ((r+1)/e)^(r+1) e
    r <= 1:  Q1 = alpha/(alpha+1) and the quartic far-region base scaled
             by r, Q2B = 2r (2/alpha+1) e^{-1 - alpha/2 - alpha^2/(alpha+2)}.

alpha_c solves Q2 = 1; the optimum alpha* solves Q2 = Q1.  For large r,
alpha_c ~ (r + ln r + 1)/e and 1 - Q* ~ (1/(e r))(e/r)^r.

The d-dimensional isotropic quartic reduces, ray by ray, to the
half-line integral with measure x^NN; the same inner sums apply with
Gamma offset (NN+1)/2 and K = M + NN + 2.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Callable, Optional

from mpmath import mp, mpf

from . import series
from .precision import BigReal, PrecisionError, PrecisionPolicy, to_mpf
from .quartic import SCEEvaluation, _bisect, _q1, _q2b, g_selfconsistent

__all__ = [
    "GeneralQParams",
    "RadialParams",
    "c_q",
    "K_of_M",
    "solve_G_general",
    "sce_partition_general",
    "tangent_point_v0",
    "Q1_general",
    "Q2_general",
    "error_bound_general",
    "critical_alpha",
    "optimal_alpha",
    "large_r_asymptotics",
    "sce_partition_radial",
    "xi_many_body",
]


@dataclass(frozen=True)
class GeneralQParams:
    """Power q > 2, coupling g > 0 (Re g > 0 tolerated for complex use)."""

    q: object
    g: object
    N: int
    M: object
    precision: PrecisionPolicy = field(default_factory=lambda: PrecisionPolicy.for_target(24))

    def __post_init__(self):
        if to_mpf(self.q) <= 2:
            raise ValueError("q must be > 2")
        if self.N < 0:
            raise ValueError("N must be >= 0")

    @property
    def r(self):
        return to_mpf(self.q) / 2 - 1


@dataclass(frozen=True)
class RadialParams:
    """Quadratic/quartic forms along rays for the multi-oscillator case.

    ``gamma_form`` and ``g_form`` map a unit direction (tuple of mpf) to
    the coefficients of r^2/2 and r^4 along that ray; gamma must be
    positive wherever it is sampled.
    """

    dimension: int
    gamma_form: Callable
    g_form: Callable
    beta: object = 1
    quadrature_dps: int = 20

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        if self.dimension > 4:
            raise ValueError("angular quadrature implemented for dimension <= 4")


def c_q(M, q):
    """Moment combination C_q(M); vanishes at M = 0, grows like M^(q/2)."""
    M = to_mpf(M)
    q = to_mpf(q)
    if M < 0 or q <= 2:
        raise ValueError("requires M >= 0, q > 2")
    half = mpf(1) / 2
    return mp.gamma(M + q / 2 + half) / mp.gamma(M + half) - mp.gamma(q / 2 + half) / mp.gamma(half)


def K_of_M(q, M):
    """K = (C_q(M)/M)^(1/r); equals M + 2 exactly at q = 4."""
    q = to_mpf(q)
    M = to_mpf(M)
    if M <= 0:
        raise ValueError("M must be > 0")
    r = q / 2 - 1
    return (c_q(M, q) / M) ** (1 / r)


def solve_G_general(q, M, g):
    """G > 1 root of (G/2)^(q/2) - (G/2)^(q/2-1)/2 = g C_q(M)/M.

    The left side is negative at G = 1 and increasing past it, so the
    root is bracketed between 1 and twice the large-M asymptote
    2 g^(2/q) M^(1-2/q) + 2/q, expanding geometrically if needed.
    """
    q = to_mpf(q)
    M = to_mpf(M)
    g = to_mpf(g)
    if M <= 0 or g <= 0:
        raise ValueError("requires M > 0 and g > 0")
    rhs = g * c_q(M, q) / M

    def f(G):
        return (G / 2) ** (q / 2) - (G / 2) ** (q / 2 - 1) / 2 - rhs

    lo = mpf(1)
    hi = 2 * (2 * g ** (2 / q) * M ** (1 - 2 / q) + 2 / q) + 2
    tries = 0
    while f(hi) < 0:
        hi *= 2
        tries += 1
        if tries > 200:
            raise PrecisionError("failed to bracket G; check inputs")
    return _bisect(f, lo, hi)


def _general_eval(q, N, M, g, precision: PrecisionPolicy, nu=None, lam=None, G=None,
                  prefactor=None, well="single") -> SCEEvaluation:
    """Shared evaluation path; the quartic case delegates here implicitly
    through identical series code, so q = 4 agrees bit for bit."""
    target = precision.target_digits
    working = precision.working_digits
    q = to_mpf(q)
    M = to_mpf(M)
    g = to_mpf(g)
    r = q / 2 - 1
    exact_quartic = (q == 4)
    for _attempt in range(3):
        with mp.workdps(working):
            if lam is not None:
                lam_v = lam() if callable(lam) else lam
            elif exact_quartic:
                lam_v = M + 2       # keeps the q = 4 path bit-identical to the quartic module
            else:
                lam_v = c_q(M, q) / M
            if G is not None:
                G_v = G() if callable(G) else G
            elif exact_quartic:
                G_v = g_selfconsistent(M, g)
            else:
                G_v = solve_G_general(q, M, g)
            nu_v = nu if nu is not None else mpf(1) / 2
            base = 1 - 1 / G_v
            sums, maxes = series.inner_sum_table(N, lam_v, r, nu_v)
            res = series.assemble_partial_sum(base, sums, maxes)
            pref = prefactor(G_v) if prefactor else mp.sqrt(2 / G_v)
            value = pref * res.total
            terms = tuple(pref * t for t in res.terms)
            cancel = float(mp.log10(res.cancellation)) if res.cancellation > 0 else 0.0
        if cancel <= working - target - 5:
            break
        working = max(4 * target, working + int(cancel) + 10)
    else:
        raise PrecisionError(f"cancellation consumed {cancel:.0f} digits")
    K = lam_v ** (1 / r) if r != 1 else lam_v
    return SCEEvaluation(
        value=BigReal(value, working),
        terms=terms,
        G=G_v,
        K=K,
        remainder_bound=None,
        alpha=(M / N) if N else None,
        well=well,
        q=q,
        working_digits=working,
        cancellation_digits=cancel,
    )


def sce_partition_general(params: GeneralQParams) -> SCEEvaluation:
    """Order-N partial sum for the |x|^q well, with the analytic bound attached."""
    ev = _general_eval(params.q, params.N, params.M, params.g, params.precision)
    bound = error_bound_general(params.q, params.N, params.M, params.g,
                                dps=min(ev.working_digits, 40))
    return dataclasses.replace(ev, remainder_bound=bound)


def tangent_point_v0(K_over_N, r):
    """Root v0 in (0, N'/K) of K/N' + r v0^(r-1) = 1/v0 (tangency point
    of the convex power bound used in the inner-region estimate)."""
    k = to_mpf(K_over_N)
    r = to_mpf(r)
    if r < 1:
        raise ValueError("tangent point applies to r >= 1")

    def f(v):
        return k + r * v ** (r - 1) - 1 / v

    return _bisect(f, mpf(10) ** (-mp.dps), 1 / k)


def Q1_general(alpha, r):
    """Inner-region exponential base; alpha/(alpha+1) for r <= 1."""
    alpha = to_mpf(alpha)
    r = to_mpf(r)
    if r <= 1:
        return _q1(alpha)
    v0 = tangent_point_v0(alpha, r)
    return alpha * v0 * mp.exp((r - 1) / r * (1 - alpha * v0))


def Q2_general(alpha, r):
    """Far-region exponential base; the r-scaled quartic form for r <= 1."""
    alpha = to_mpf(alpha)
    r = to_mpf(r)
    if r <= 1:
        return _q2b(alpha, r)
    return alpha ** (-r) * ((r + 1) / mp.e) ** (r + 1) * mp.e


def error_bound_general(q, N: int, M, g, dps: int = 40):
    """Rigorous upper bound on |Z^(N) - Z| for the |x|^q well.

    For r = q/2 - 1 > 1 the two components are the tangent-line geometric
    bound with base Q1 and a factorial-ratio far bound; for r <= 1 the
    quartic three-term bound applies with its far terms scaled by r^N'.
    At r = 1 this reproduces the quartic bound exactly.
    """
    q = to_mpf(q)
    M = to_mpf(M)
    g = to_mpf(g)
    with mp.workdps(dps):
        r = q / 2 - 1
        K = K_of_M(q, M)
        Np = mpf(N + 1)
        G = solve_G_general(q, M, g)
        pref = mp.sqrt(2 / G) * (1 - 1 / G) ** Np
        if r > 1:
            v0 = tangent_point_v0(K / Np, r)
            q1 = (K * v0 / Np) * mp.exp((r - 1) / r * (1 - K * v0 / Np))
            if q1 >= 1:
                return mp.inf
            t1 = mp.sqrt(K * v0 / Np ** 2) * q1 ** Np / (1 - q1)
            t2 = mp.gamma((r + 1) * Np + 1) / (K ** (r * Np) * mp.factorial(Np))
            return pref * (t1 + t2)
        t1 = mp.sqrt(K ** 2 / Np ** 3) * (K / (K + Np)) ** (Np - mpf(1) / 2)
        t2 = (2 * r) ** Np * mp.exp(-K) / mp.sqrt(2 * K)
        t3 = (2 / mp.sqrt(K)) * ((2 * r * Np) ** Np / mp.factorial(Np)) \
            * (2 * Np / K + 1) ** (Np + 1) * mp.exp(-2 * Np - K / 2 - K ** 2 / (2 * Np + K))
        return pref * (t1 + t2 + t3)


def critical_alpha(q):
    """Smallest certified moment ratio: (r+1)^(1+1/r)/e for r > 1, else the
    root of the r-scaled far-region base at unity."""
    q = to_mpf(q)
    if q <= 2:
        raise ValueError("q must be > 2")
    with mp.workdps(max(mp.dps, 30)):
        r = q / 2 - 1
        if r > 1:
            return (r + 1) ** (1 + 1 / r) / mp.e
        return _bisect(lambda a: Q2_general(a, r) - 1, mpf("0.1"), mpf(3))


def optimal_alpha(q):
    """Ratio where the two error components balance; returns
    (alpha_star, -log10 of the common base)."""
    q = to_mpf(q)
    with mp.workdps(max(mp.dps, 30)):
        r = q / 2 - 1
        ac = critical_alpha(q)
        astar = _bisect(lambda a: Q2_general(a, r) - Q1_general(a, r),
                        ac * (1 + mpf(10) ** (-12)), ac + 3)
        qstar = Q1_general(astar, r)
        return astar, -mp.log10(qstar)


def large_r_asymptotics(r):
    """Leading large-r estimates (alpha_c, 1 - Q) = ((r + ln r + 1)/e,
    (1/(e r)) (e/r)^r); useful from r ~ 4 up."""
    r = to_mpf(r)
    if r <= 1:
        raise ValueError("asymptotic form applies to r > 1")
    alpha_c = (r + mp.log(r) + 1) / mp.e
    one_minus_q = (1 / (mp.e * r)) * (mp.e / r) ** r
    return alpha_c, one_minus_q


def sce_partition_radial(NN: int, N: int, M, g,
                         precision: Optional[PrecisionPolicy] = None) -> SCEEvaluation:
    """Half-line quartic partial sum with measure x^NN.

    Z_NN^(N) = (1/2) (2/G)^((NN+1)/2) sum_n (1-1/G)^n sum_l (-1)^l C(n,l)
               Gamma(n + l + (NN+1)/2) / (n! (M + NN + 2)^l),

    with G on the single-well branch for the shifted K = M + NN + 2.
    """
    if NN < 0:
        raise ValueError("NN must be >= 0")
    precision = precision or PrecisionPolicy.for_target(24)
    M = to_mpf(M)
    g = to_mpf(g)
    nu = (mpf(NN) + 1) / 2
    # the shifted K = M + NN + 2 reuses the quartic radical through M -> M + NN
    ev = _general_eval(q=4, N=N, M=M, g=g, precision=precision, nu=nu,
                       lam=lambda: M + NN + 2,
                       G=lambda: g_selfconsistent(M + NN, g),
                       prefactor=lambda Gv: (2 / Gv) ** ((mpf(NN) + 1) / 2) / 2,
                       well=f"radial-{NN}")
    return ev


def xi_many_body(params: RadialParams, N: int, M) -> mpf:
    """Full partition function of coupled quartic oscillators.

    After reduction to radial and angular coordinates,

        Xi^(N) = int dOmega (beta gamma(Omega))^(-NN/2)
                 Z_(NN-1)^(N)( g(Omega) / (beta gamma(Omega)^2) ),

    the angular integral runs over the unit sphere S^(NN-1) with
    Gauss-Legendre panels whose degree mpmath escalates until the target
    digits stabilize.  Positivity of gamma is checked at every node.
    """
    NN = params.dimension
    beta = to_mpf(params.beta)
    dps = params.quadrature_dps
    pol = PrecisionPolicy.for_target(max(dps + 10, 16))

    def ray_value(omega):
        gam = to_mpf(params.gamma_form(omega))
        if gam <= 0:
            raise ValueError(f"gamma(Omega) must be positive, got {gam} at {omega}")
        g_ray = to_mpf(params.g_form(omega))
        if g_ray < 0:
            raise ValueError("g(Omega) must be >= 0")
        g_eff = g_ray / (beta * gam ** 2)
        z = sce_partition_radial(NN - 1, N, M, g_eff, precision=pol)
        return (beta * gam) ** (-mpf(NN) / 2) * z.value.value

    with mp.workdps(dps + 10):
        if NN == 1:
            # S^0 is the two points +-1
            return ray_value((mpf(1),)) + ray_value((mpf(-1),))
        if NN == 2:
            return mp.quad(lambda t: ray_value((mp.cos(t), mp.sin(t))),
                           [0, mp.pi, 2 * mp.pi], method="gauss-legendre")
        if NN == 3:
            return mp.quad(
                lambda t, ph: mp.sin(t) * ray_value(
                    (mp.sin(t) * mp.cos(ph), mp.sin(t) * mp.sin(ph), mp.cos(t))),
                [0, mp.pi], [0, 2 * mp.pi], method="gauss-legendre")
        # NN == 4: chart (t1, t2, ph) with Jacobian sin^2(t1) sin(t2)
        return mp.quad(
            lambda t1, t2, ph: mp.sin(t1) ** 2 * mp.sin(t2) * ray_value(
                (mp.sin(t1) * mp.sin(t2) * mp.cos(ph),
                 mp.sin(t1) * mp.sin(t2) * mp.sin(ph),
                 mp.sin(t1) * mp.cos(t2),
                 mp.cos(t1))),
            [0, mp.pi], [0, mp.pi], [0, 2 * mp.pi], method="gauss-legendre")
