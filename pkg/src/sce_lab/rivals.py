"""Competing approximation schemes for the benchmark comparisons.

Implements, for both the quartic partition function Z(g) and the Airy
function, the methods the expansion is raced against:

  * superasymptotics: truncation of the divergent power series at the
    singulant, N0 = floor(F) with F = 1/(16 g) resp. (4/3) z^(3/2);
  * a Borel representation of the superasymptotic tail
    (Gamma(2n+1/2) = int t^(2n-1/2) e^-t dt turns the discarded sum into
    a convergent integral, evaluated by quadrature);
  * diagonal Pade approximants of the power series;
  * Lanczos's tau method: the exact polynomial solution of the ODE for
    Z (or the reduced Airy function) perturbed by tau T*_N(x/s);
  * first-level hyperasymptotics: the superasymptotic remainder re-expanded
    over the adjacent saddle with closed-form terminants built from E1,
    truncated at N1 = round(N0/2);
  * the closed-form error predictors for the staged trans-series.

Hyperasymptotic levels beyond the first are out of scope; the predictors
quantify what deeper levels would buy.

Terminant conventions (orientation signs and the term-count entering the
tail subtraction) were fixed by matching the exact remainder
Z - Z_superasymptotic to better than a part in 10^3 at F = 10; see the
accompanying tests.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from mpmath import mp, mpc, mpf

from .precision import to_mpf
from .special import exact_Z_quartic

__all__ = [
    "Problem",
    "SeriesCoefficients",
    "SuperasymptoticResult",
    "HyperLevel1Result",
    "PadeDegeneracyError",
    "pt_coefficients",
    "singulant",
    "superasymptotic",
    "borel_tail",
    "pade",
    "pade_fraction",
    "chebyshev_shifted_coefficients",
    "lanczos_tau",
    "lanczos_tau_coefficients",
    "hyper_level1",
    "hyper_error_predict",
    "airy_from_tilde",
]


class Problem(enum.Enum):
    QUARTIC_Z = "quartic_Z"
    AIRY_TILDE = "airy_tilde"


class PadeDegeneracyError(ArithmeticError):
    """Singular Pade/tau linear system; caller decides any fallback."""


@dataclass(frozen=True)
class SeriesCoefficients:
    problem: Problem
    coeffs: tuple
    order: int


@dataclass(frozen=True)
class SuperasymptoticResult:
    value: object
    n0: int
    trivial: bool       # F < 1: nothing beyond the zeroth term survives


@dataclass(frozen=True)
class HyperLevel1Result:
    value: object
    n0: int
    n1: int
    terminants: tuple
    predicted_error: object


def pt_coefficients(problem: Problem, order: int) -> SeriesCoefficients:
    """Power-series coefficients of the divergent expansion.

    quartic: coefficient of g^n is sqrt(2) (-4)^n Gamma(2n+1/2)/n!
    airy:    coefficient of z^(-3n/2) is (-1)^n Gamma(3n+1/2)/(9^n (2n)!)
    """
    cs = []
    half = mpf(1) / 2
    if problem is Problem.QUARTIC_Z:
        for n in range(order + 1):
            cs.append(mp.sqrt(mpf(2)) * mpf(-4) ** n * mp.gamma(2 * n + half) / mp.factorial(n))
    else:
        for n in range(order + 1):
            cs.append(mpf(-1) ** n * mp.gamma(3 * n + half)
                      / (mpf(9) ** n * mp.factorial(2 * n)))
    return SeriesCoefficients(problem, tuple(cs), order)


def singulant(problem: Problem, coupling):
    """F = 1/(16 g) for the quartic, (4/3) z^(3/2) for Airy."""
    coupling = to_mpf(coupling)
    if coupling <= 0:
        raise ValueError("coupling must be > 0")
    if problem is Problem.QUARTIC_Z:
        return 1 / (16 * coupling)
    return mpf(4) / 3 * coupling ** mpf("1.5")


def _expansion_variable(problem: Problem, coupling):
    coupling = to_mpf(coupling)
    return coupling if problem is Problem.QUARTIC_Z else coupling ** mpf(-1.5)


def airy_from_tilde(value_tilde, z):
    """Undo the reduction: Ai(z) = e^(-2/3 z^(3/2)) z^(-1/4) / (2 pi) Ai~(z)."""
    z = to_mpf(z)
    return value_tilde * mp.exp(-mpf(2) / 3 * z ** mpf("1.5")) * z ** mpf(-0.25) / (2 * mp.pi)


def _series_value(problem: Problem, coupling, upto: int):
    x = _expansion_variable(problem, coupling)
    cs = pt_coefficients(problem, upto).coeffs
    acc = mpf(0)
    xp = mpf(1)
    for n in range(upto + 1):
        acc += cs[n] * xp
        xp *= x
    return acc


def superasymptotic(problem: Problem, coupling) -> SuperasymptoticResult:
    """Least-term truncation of the divergent series at N0 = floor(F).

    For F < 1 (quartic g > 1/16) the truncation is trivial: only the
    zeroth term is kept and the result is flagged.
    """
    F = singulant(problem, coupling)
    n0 = int(mp.floor(F))
    value = _series_value(problem, coupling, max(n0, 0))
    if problem is Problem.AIRY_TILDE:
        value = airy_from_tilde(value, coupling)
    return SuperasymptoticResult(value=value, n0=n0, trivial=n0 < 1)


def borel_tail(g, N0: int, dps: int = 0):
    """Superasymptotic value plus the Borel representation of its tail.

    sqrt(2) int_0^inf e^-t t^(-1/2) [e^(-4 g t^2) - sum_{n<=N0} (-4gt^2)^n/n!] dt

    is exactly the discarded remainder, since term n integrates back to
    sqrt(2) (-4g)^n Gamma(2n+1/2)/n!.  With N0 = -1 nothing is subtracted
    and the integral is the exact partition function (the series is Borel
    summable).  Quartic only.
    """
    g = to_mpf(g)
    if g <= 0:
        raise ValueError("g must be > 0")
    dps = int(dps) if dps else mp.dps
    # the subtracted sum cancels the integrand to O(t^(2N0+2)); guard digits
    # cover the cancellation near the peak of t^(2n-1/2) e^-t
    guard = dps + 10 + int(0.9 * max(N0, 0))
    with mp.workdps(guard):
        head = _series_value(Problem.QUARTIC_Z, g, N0) if N0 >= 0 else mpf(0)

        def integrand(t):
            if t <= 0:
                return mpf(0)
            x = 4 * g * t * t
            s = mpf(0)
            term = mpf(1)
            for n in range(N0 + 1):
                if n:
                    term *= -x / n
                s += term
            return mp.exp(-t) / mp.sqrt(t) * (mp.exp(-x) - s)

        peak = max(mpf(2) * (N0 + 1), mpf(1))
        tail = mp.sqrt(mpf(2)) * mp.quad(integrand, [0, peak, mp.inf])
        if mp.isnan(tail) or mp.isinf(tail):
            raise ArithmeticError("Borel tail quadrature failed to converge")
        out = head + tail
    with mp.workdps(dps):
        return +out


def pade_fraction(problem: Problem, N: int):
    """Numerator/denominator coefficients of the diagonal [N/2 | N/2]
    approximant matched to the first N+1 series coefficients, Q(0) = 1."""
    if N % 2 != 0 or N < 0:
        raise ValueError("diagonal Pade requires even N >= 0")
    L = M = N // 2
    c = pt_coefficients(problem, N).coeffs
    if M == 0:
        return (c[0],), (mpf(1),)
    A = mp.matrix(M, M)
    b = mp.matrix(M, 1)
    for i, m in enumerate(range(L + 1, L + M + 1)):
        for j in range(1, M + 1):
            A[i, j - 1] = c[m - j] if m - j >= 0 else mpf(0)
        b[i] = -c[m]
    try:
        sol = mp.lu_solve(A, b)
    except ZeroDivisionError as exc:
        raise PadeDegeneracyError(f"singular Pade system at N={N}") from exc
    qs = (mpf(1),) + tuple(sol[j] for j in range(M))
    ps = tuple(sum(qs[j] * c[m - j] for j in range(0, min(m, M) + 1)) for m in range(L + 1))
    return ps, qs


def pade(problem: Problem, coupling, N: int, dps: int = 0):
    """Value of the diagonal Pade approximant at the coupling."""
    dps = int(dps) if dps else mp.dps
    with mp.workdps(dps + N + 20):
        ps, qs = pade_fraction(problem, N)
        x = _expansion_variable(problem, coupling)
        P = mpf(0)
        for pcoef in reversed(ps):
            P = P * x + pcoef
        Q = mpf(0)
        for qcoef in reversed(qs):
            Q = Q * x + qcoef
        if Q == 0:
            raise PadeDegeneracyError("Pade denominator vanishes at the coupling")
        out = P / Q
        if problem is Problem.AIRY_TILDE:
            out = airy_from_tilde(out, coupling)
    with mp.workdps(dps):
        return +out


def chebyshev_shifted_coefficients(N: int) -> list:
    """Integer coefficients of the shifted Chebyshev polynomial
    T*_N(x) = T_N(2x - 1), by the exact recurrence
    T*_{n+1} = (4x - 2) T*_n - T*_{n-1}."""
    a, b = [1], [-1, 2]
    if N == 0:
        return a
    if N == 1:
        return b
    for _ in range(N - 1):
        nxt = [0] * (len(b) + 1)
        for i, v in enumerate(b):
            nxt[i + 1] += 4 * v
            nxt[i] -= 2 * v
        for i, v in enumerate(a):
            nxt[i] -= v
        a, b = b, nxt
    return b


def _tau_recurrence(problem: Problem):
    # coefficient identities of the underlying ODEs:
    # quartic: 16 g^2 Z'' + (1+32g) Z' + 3 Z   -> (n+1) a_{n+1} + (4n+1)(4n+3) a_n
    # airy:    36 x^2 f'' + 24(2+3x) f' + 5 f  -> 48(n+1) a_{n+1} + (6n+1)(6n+5) a_n
    if problem is Problem.QUARTIC_Z:
        return (lambda n: mpf(n + 1)), (lambda n: mpf((4 * n + 1) * (4 * n + 3))), mp.sqrt(2 * mp.pi)
    return (lambda n: mpf(48 * (n + 1))), (lambda n: mpf((6 * n + 1) * (6 * n + 5))), mp.sqrt(mp.pi)


def lanczos_tau_coefficients(problem: Problem, coupling, N: int):
    """Power-series coefficients a_0..a_N and tau of the perturbed ODE.

    Matching powers x^0..x^N of  ODE(sum a_n x^n) = tau T*_N(x/s) with
    s = x(coupling) and the boundary value a_0 fixed gives a triangular
    system: a_n = u_n + tau v_n by downward substitution, then tau from
    a_0.  The system is never singular (the ODE coefficients (4n+1)(4n+3)
    resp. (6n+1)(6n+5) cannot vanish), but a vanishing v_0 would be; it
    is checked explicitly.
    """
    up_coef, diag_coef, boundary = _tau_recurrence(problem)
    x = _expansion_variable(problem, coupling)
    s = x
    t_star = chebyshev_shifted_coefficients(N)
    u = [mpf(0)] * (N + 2)
    v = [mpf(0)] * (N + 2)
    for n in range(N, -1, -1):
        den = diag_coef(n)
        u[n] = (-up_coef(n) * u[n + 1]) / den
        v[n] = (t_star[n] / s ** n - up_coef(n) * v[n + 1]) / den
    if v[0] == 0:
        raise PadeDegeneracyError("tau system singular: boundary row vanished")
    tau = (boundary - u[0]) / v[0]
    coeffs = [u[n] + tau * v[n] for n in range(N + 1)]
    return coeffs, tau


def lanczos_tau(problem: Problem, coupling, N: int, dps: int = 0):
    """Value of the order-N tau approximant at the coupling (stretch s = x).

    The Chebyshev coefficients reach ~4^N and carry s^-n, so the working
    precision is raised accordingly before the downward substitution.
    """
    dps = int(dps) if dps else mp.dps
    coupling = to_mpf(coupling)
    x = _expansion_variable(problem, coupling)
    extra = int(N * (0.61 + max(0.0, -float(mp.log10(abs(x)))))) + 25
    with mp.workdps(dps + extra):
        coeffs, _tau = lanczos_tau_coefficients(problem, coupling, N)
        x = _expansion_variable(problem, coupling)
        out = mpf(0)
        for a in reversed(coeffs):
            out = out * x + a
        if problem is Problem.AIRY_TILDE:
            out = airy_from_tilde(out, coupling)
    with mp.workdps(dps):
        return +out


def _terminant_tail(F, upper: int):
    """-e^F E1(F) + sum_{m=0}^{upper} (-1)^m m!/F^(m+1): the remainder of
    the asymptotic expansion of e^F E1(F) past term ``upper``."""
    acc = -mp.exp(F) * mp.e1(F)
    term = 1 / F
    m = 0
    while m <= upper:
        acc += term
        term *= -(m + 1) / F
        m += 1
    return acc


def hyper_level1(problem: Problem, coupling, dps: int = 0) -> HyperLevel1Result:
    """Level-0 plus level-1 hyperasymptotic value.

    quartic:  Z ~ sum_{r<=N0} T_r^(2) + 2 sum_{r<=N1} K_r^(23) T_r^(3),
              T_r^(3) = -i (4g)^r Gamma(2r+1/2)/r!, both adjacent saddles
              contributing equally (symmetry factor 2);
    airy:     Ai~ ~ sum_{r<=N0} T_r^(1) + sum_{r<=N1} K_r^(12) T_r^(2),
              T_r^(2) = i (-1)^r T_r^(1).

    N0 = floor(F), halved to N1 = round(N0/2) at the first level.  The
    terminants reduce to principal-value E1 plus a finite factorial sum;
    levels >= 2 are deliberately absent.
    """
    dps = int(dps) if dps else mp.dps
    coupling = to_mpf(coupling)
    with mp.workdps(dps + 15):
        F = singulant(problem, coupling)
        if F < 2:
            raise ValueError("level-1 hyperasymptotics needs singulant F >= 2")
        n0 = int(mp.floor(F))
        n1 = int(mp.nint(mpf(n0) / 2))
        level0 = _series_value(problem, coupling, n0)
        half = mpf(1) / 2
        terminants = []
        corr = mpf(0)
        if problem is Problem.QUARTIC_Z:
            g = coupling
            for r in range(n1 + 1):
                t_r = (4 * g) ** r * mp.gamma(2 * r + half) / mp.factorial(r)
                tail = _terminant_tail(F, n0 - r - 1)
                terminants.append(mpc(0, 1) * tail / (2 * mp.pi))
                corr += t_r * tail / mp.pi
            value = level0 + corr
        else:
            xs = coupling ** mpf(-1.5)
            for r in range(n1 + 1):
                t_r = mpf(-1) ** r * mp.gamma(3 * r + half) / (mpf(9) ** r * mp.factorial(2 * r)) * xs ** r
                tail = _terminant_tail(F, n0 - r - 2)
                terminants.append(mpc(0, -1) * tail / (2 * mp.pi))
                corr += mpf(-1) ** r * t_r * tail / (2 * mp.pi)
            value = airy_from_tilde(level0 + corr, coupling)
        predicted = hyper_error_predict(problem, F, 1)
    with mp.workdps(dps):
        return HyperLevel1Result(value=+value, n0=n0, n1=n1,
                                 terminants=tuple(terminants), predicted_error=+predicted)


def hyper_error_predict(problem: Problem, F, S: int = 0):
    """Predicted absolute error of the S-stage hyperasymptotic trans-series.

    quartic: e^-F/sqrt(2 pi F) * prod_{s=1..S} 2^(s/2) F^(-1/2)
             (pi^(-1/2) for s >= 2) e^(-ln2 F / 2^(s-1)) * 2^floor((S+1)/2);
             S = 0 is the bare superasymptotic estimate.
    airy:    the closed-form completed-trans-series estimate
             sqrt(2/pi) F^(log2(F)/4 + 3/4 - log2(3 sqrt(2 pi)))
             e^(-(1+2 ln2) F), independent of S.
    """
    F = to_mpf(F)
    if F <= 0:
        raise ValueError("F must be > 0")
    if S < 0:
        raise ValueError("S must be >= 0")
    if problem is Problem.AIRY_TILDE:
        expo = mp.log(F, 2) / 4 + mpf(3) / 4 - mp.log(3 * mp.sqrt(2 * mp.pi), 2)
        return mp.sqrt(2 / mp.pi) * F ** expo * mp.exp(-(1 + 2 * mp.log(2)) * F)
    out = mp.exp(-F) / mp.sqrt(2 * mp.pi * F)
    for s in range(1, S + 1):
        den = mp.sqrt(F) if s == 1 else mp.sqrt(mp.pi * F)
        out *= mpf(2) ** (mpf(s) / 2) / den * mp.exp(-mp.log(2) * F / mpf(2) ** (s - 1))
    return out * mpf(2) ** ((S + 1) // 2)
