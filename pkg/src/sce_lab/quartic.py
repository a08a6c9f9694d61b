"""Self-consistent expansion of the quartic anharmonic oscillator.

The partition integral int exp(-(x^2/2 + g x^4)) dx is expanded around a
rescaled harmonic reference G x^2/2 whose strength is fixed, order by
order, so that the chosen even moment <x^(2M)> receives no first-order
correction.  With K = M + 2 that closes in radicals,

    G = 1/2 + sqrt(1 + 16 K g)/2,      (1 - G) G / (4 g) = -K,

and the order-N approximant becomes

    Z^(N) = sqrt(2/G) sum_{n<=N} (1 - 1/G)^n S_{n,K},
    S_{n,K} = sum_{l<=n} (-1)^l C(n,l) Gamma(n+l+1/2) / (n! K^l).

The double well (negative quadratic term) uses the other root branch,
G = -1/2 + sqrt(1 + 16 K g)/2 > 0, and the replacement
(1 - 1/G) -> (1 + 1/G).

This module also carries the analytic remainder bound for the single
well, the per-order digit-gain bound A(alpha) with its critical and
optimal moment ratios, and the sharper coefficient-based estimates from
the Kummer-transformed form of S_{n,K}.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from mpmath import mp, mpf

from . import series
from .precision import BigReal, PrecisionError, PrecisionPolicy, to_mpf
from .special import exact_Z_double_well, exact_Z_quartic

__all__ = [
    "Well",
    "MomentSchedule",
    "QuarticSCEParams",
    "SCEEvaluation",
    "g_selfconsistent",
    "g_selfconsistent_dw",
    "sce_coefficient",
    "sce_partition_quartic",
    "error_bound_quartic",
    "rate_bound_A",
    "alpha_critical_quartic",
    "alpha_star_quartic",
    "appendix_alpha_critical",
    "appendix_alpha_star",
    "dw_critical_order",
    "coefficient_peak_indices",
    "lnQ_limits",
    "proposition_case_check",
    "PropositionVerdict",
]

class Well(enum.Enum):
    SINGLE = "single"
    DOUBLE = "double"


@dataclass(frozen=True)
class MomentSchedule:
    """Rule M(N) for the conserved-moment index.

    linear:   M = alpha * N with alpha an exact rational,
    power:    M = coeff * N**p,
    explicit: a fixed table of values.
    """

    kind: str
    alpha: Optional[Fraction] = None
    p: Optional[float] = None
    coeff: float = 1.0
    values: Optional[tuple] = None
    description: str = ""

    @classmethod
    def linear(cls, alpha) -> "MomentSchedule":
        alpha = Fraction(alpha)
        if alpha <= 0:
            raise ValueError("alpha must be positive")
        return cls(kind="linear", alpha=alpha, description=f"M = {alpha} N")

    @classmethod
    def power(cls, p, coeff=1) -> "MomentSchedule":
        return cls(kind="power", p=float(p), coeff=float(coeff),
                   description=f"M = {coeff} N^{p}")

    @classmethod
    def explicit(cls, values: Sequence) -> "MomentSchedule":
        return cls(kind="explicit", values=tuple(values), description="explicit table")

    def moment(self, N: int):
        if self.kind == "linear":
            return to_mpf(Fraction(self.alpha) * N)
        if self.kind == "power":
            return mpf(self.coeff) * mpf(N) ** mpf(self.p)
        if self.kind == "explicit":
            return mpf(self.values[N])
        raise ValueError(f"unknown schedule kind {self.kind}")


@dataclass(frozen=True)
class QuarticSCEParams:
    """Inputs of one quartic evaluation; K = M + 2 throughout."""

    g: object
    N: int
    M: object
    well: Well = Well.SINGLE
    precision: PrecisionPolicy = field(default_factory=lambda: PrecisionPolicy.for_target(24))

    def __post_init__(self):
        if self.N < 0:
            raise ValueError("order N must be >= 0")

    @property
    def K(self):
        return to_mpf(self.M) + 2


@dataclass(frozen=True)
class SCEEvaluation:
    """One evaluated partial sum with its per-order terms and diagnostics.

    ``value`` is the sum of ``terms`` in ascending order at the working
    precision actually used; ``remainder_bound`` is the analytic bound
    where one exists (single-well branches only).
    """

    value: object
    terms: tuple
    G: object
    K: object
    remainder_bound: Optional[object]
    alpha: Optional[object]
    well: str
    q: object
    working_digits: int
    cancellation_digits: float


def g_selfconsistent(M, g):
    """Single-well branch G = 1/2 + sqrt(1 + 16 (M+2) g)/2 (G >= 1)."""
    M = to_mpf(M)
    g = to_mpf(g)
    if g < 0 or M < 0:
        raise ValueError("requires g >= 0 and M >= 0")
    return mpf(1) / 2 + mp.sqrt(1 + 16 * (M + 2) * g) / 2


def g_selfconsistent_dw(M, g):
    """Double-well branch G = -1/2 + sqrt(1 + 16 (M+2) g)/2 (G > 0, -> 0 as g -> 0)."""
    M = to_mpf(M)
    g = to_mpf(g)
    if g <= 0 or M < 0:
        raise ValueError("requires g > 0 and M >= 0")
    return -mpf(1) / 2 + mp.sqrt(1 + 16 * (M + 2) * g) / 2


def sce_coefficient(n: int, K, dps: int = 0, compare_digits: int = 0):
    """Series coefficient S_{n,K}, from its numerically stable form.

    The direct alternating sum

        S_{n,K} = sum_l (-1)^l C(n,l) Gamma(n+l+1/2) / (n! K^l)

    cancels heavily; Kummer's transformation 1F1(a,b;z) = e^z 1F1(b-a,b;-z)
    (DLMF 13.2.39) turns it into the eventually-positive series

        S_{n,K} = (-1)^n Gamma(n+1/2) / (K^n n! e^K)
                  * sum_s t_s,   t_0 = Gamma(2n+1/2)/Gamma(n+1/2),
                  t_{s+1} = t_s * K (n-s-1/2) / ((s+1)(2n-s-1/2)).

    Both forms are evaluated; disagreement beyond the working tolerance
    raises PrecisionError since it signals a precision bug rather than a
    modelling choice.  Returns the transformed-form value.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    K = to_mpf(K)
    if K <= 0:
        raise ValueError("K must be > 0")
    dps = int(dps) if dps else mp.dps
    guard = max(2 * dps, dps + 2 * n)
    with mp.workdps(guard):
        direct, _ = series.inner_sum_unit_step(n, K, mpf(1) / 2, mp.gamma(n + mpf(1) / 2))
        direct = direct / mp.factorial(n)

        if K > 50000 and K > 2 * n * n + n:
            # far regime: the direct sum peaks at l = 0 and is benign, while
            # the transformed series would need ~K terms to clear its maximum
            out = +direct
            with mp.workdps(dps):
                return +out

        t = mp.gamma(2 * n + mpf(1) / 2) / mp.gamma(n + mpf(1) / 2)
        acc = t
        s = 0
        tol = mpf(10) ** (-(guard + 5))
        while True:
            t = t * K * (n - s - mpf(1) / 2) / ((s + 1) * (2 * n - s - mpf(1) / 2))
            acc += t
            s += 1
            if s > 2 * n + 2 and abs(t) < tol * abs(acc):
                break
            if s > 100000:
                raise RuntimeError("transformed coefficient series did not converge")
        transformed = ((-1) ** n * mp.gamma(n + mpf(1) / 2) / (K ** n * mp.factorial(n) * mp.exp(K))) * acc

        check = compare_digits or dps
        if abs(direct - transformed) > abs(transformed) * mpf(10) ** (-check):
            raise PrecisionError(
                f"S({n},K): representations disagree beyond 1e-{check}; raise working precision")
    with mp.workdps(dps):
        return +transformed


def _base_factor(G, well: Well):
    return (1 - 1 / G) if well is Well.SINGLE else (1 + 1 / G)


def sce_partition_quartic(params: QuarticSCEParams) -> SCEEvaluation:
    """Order-N partial sum Z^(N) for the quartic well, either branch.

    Evaluated at the policy's working precision with a cancellation
    monitor; if intermediate magnitudes eat into the target digits the
    sum is retried at escalated precision, and a PrecisionError is raised
    if two escalations are not enough.
    """
    pol = params.precision
    target = pol.target_digits
    working = pol.working_digits
    g = to_mpf(params.g)
    M = to_mpf(params.M)
    if g < 0:
        raise ValueError("g must be >= 0")
    if params.well is Well.DOUBLE and g == 0:
        raise ValueError("double well requires g > 0")

    for _attempt in range(3):
        with mp.workdps(working):
            G = g_selfconsistent(M, g) if params.well is Well.SINGLE else g_selfconsistent_dw(M, g)
            K = M + 2
            base = _base_factor(G, params.well)
            sums, maxes = series.inner_sum_table(params.N, K, 1, mpf(1) / 2)
            res = series.assemble_partial_sum(base, sums, maxes)
            value = mp.sqrt(2 / G) * res.total
            terms = tuple(mp.sqrt(2 / G) * t for t in res.terms)
            cancel_digits = float(mp.log10(res.cancellation)) if res.cancellation > 0 else 0.0
        if cancel_digits <= working - target - 5:
            break
        working = max(4 * target, working + int(cancel_digits) + 10)
    else:
        raise PrecisionError(
            f"cancellation consumed {cancel_digits:.0f} digits at working={working}")

    bound = None
    if params.well is Well.SINGLE:
        bound = error_bound_quartic(params.N, M, g, dps=min(working, 40))
    N = params.N
    alpha = (M / N) if N else None
    return SCEEvaluation(
        value=BigReal(value, working),
        terms=terms,
        G=G,
        K=K,
        remainder_bound=bound,
        alpha=alpha,
        well=params.well.value,
        q=4,
        working_digits=working,
        cancellation_digits=cancel_digits,
    )


def error_bound_quartic(N: int, M, g, loosened: bool = False, dps: int = 40):
    """Rigorous upper bound on |Z^(N) - Z| for the single well.

    Three contributions, with N' = N + 1 and K = M + 2:

      inner region:   sqrt(K^2/N'^3) [K/(K+N')]^(N'-1/2)
      near region:    2^N' e^-K / sqrt(2K)
      far region:     (2/sqrt(K)) ((2N')^N'/N'!) (2N'/K+1)^(N'+1)
                          e^(-2N' - K/2 - K^2/(2N'+K))

    all multiplied by sqrt(2/G) (1-1/G)^N'.  The far-region tangent-line
    construction is valid for every K > 0 (the tangency point merely
    leaves [1, inf) when K > 2N', which only loosens it).  With
    ``loosened`` the g-dependent prefactor is replaced by sqrt(2), making
    the bound independent of the coupling.
    """
    M = to_mpf(M)
    g = to_mpf(g)
    with mp.workdps(dps):
        K = M + 2
        Np = mpf(N + 1)
        t1 = mp.sqrt(K ** 2 / Np ** 3) * (K / (K + Np)) ** (Np - mpf(1) / 2)
        t2 = mpf(2) ** Np * mp.exp(-K) / mp.sqrt(2 * K)
        t3 = (2 / mp.sqrt(K)) * ((2 * Np) ** Np / mp.factorial(Np)) \
            * (2 * Np / K + 1) ** (Np + 1) * mp.exp(-2 * Np - K / 2 - K ** 2 / (2 * Np + K))
        if loosened:
            pref = mp.sqrt(mpf(2))
        else:
            G = g_selfconsistent(M, g)
            pref = mp.sqrt(2 / G) * (1 - 1 / G) ** Np
        return pref * (t1 + t2 + t3)


def _q2b(alpha, r=1):
    alpha = to_mpf(alpha)
    return 2 * r * (2 / alpha + 1) * mp.exp(-1 - alpha / 2 - alpha ** 2 / (alpha + 2))


def _q1(alpha):
    alpha = to_mpf(alpha)
    return alpha / (alpha + 1)


def _bisect(f, lo, hi, tol=None):
    lo, hi = mpf(lo), mpf(hi)
    flo, fhi = f(lo), f(hi)
    if flo * fhi > 0:
        raise ValueError("root not bracketed")
    tol = tol or mpf(10) ** (-mp.dps + 4)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        fm = f(mid)
        if flo * fm <= 0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    return (lo + hi) / 2


@functools.lru_cache(maxsize=None)
def alpha_critical_quartic():
    """Smallest moment ratio alpha = M/N the convergence bound can certify."""
    with mp.workdps(30):
        return _bisect(lambda a: _q2b(a) - 1, mpf(1) / 2, mpf(3) / 2)


@functools.lru_cache(maxsize=None)
def alpha_star_quartic():
    """Ratio balancing the far-region and inner-region error terms."""
    with mp.workdps(30):
        return _bisect(lambda a: _q2b(a) - _q1(a), mpf(1), mpf(2))


def rate_bound_A(alpha):
    """Guaranteed decimal digits gained per order at moment ratio alpha.

    Piecewise -log10 of the dominant exponential base: the far-region
    base below the optimum, the inner-region base alpha/(alpha+1) above
    it.  Only defined above the critical ratio.
    """
    alpha = to_mpf(alpha)
    if alpha <= alpha_critical_quartic():
        raise ValueError("rate bound only defined for alpha > alpha_critical")
    with mp.workdps(max(mp.dps, 30)):
        q = _q2b(alpha) if alpha < alpha_star_quartic() else _q1(alpha)
        return -mp.log10(q)


def dw_critical_order(alpha, g):
    """Order past which double-well convergence dominates the divergent factor.

    N_c = -sqrt(1/(16 g alpha)) / ln(alpha/(alpha+1)); finite for every
    alpha above critical, decreasing in both arguments.
    """
    alpha = to_mpf(alpha)
    g = to_mpf(g)
    if g <= 0:
        raise ValueError("g must be > 0")
    if alpha <= alpha_critical_quartic():
        raise ValueError("requires alpha > alpha_critical")
    return -mp.sqrt(1 / (16 * g * alpha)) / mp.log(alpha / (alpha + 1))


def coefficient_peak_indices(n: int, K):
    """Locations s-/s+ of the two peaks of the transformed coefficient series.

    Roots of K (n - s - 1/2) = (s+1)(2n - s - 1/2):
    s+- = [(4n+1) + (2K-1) - 3 +- sqrt((4n+1)^2 + (2K-1)^2 - 1)] / 4,
    approximately n + K/2 -+ sqrt(n^2 + K^2/4); s- < n < 2n < s+.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    K = to_mpf(K)
    if K <= 0:
        raise ValueError("K must be > 0")
    a = mpf(4 * n + 1)
    b = 2 * K - 1
    root = mp.sqrt(a ** 2 + b ** 2 - 1)
    s_minus = (a + b - 3 - root) / 4
    s_plus = (a + b - 3 + root) / 4
    return s_minus, s_plus


def lnQ_limits(alpha):
    """Large-order exponential rates (per order) of the two coefficient peaks.

    ln Q- = -[alpha + sqrt(alpha^2+4) + 4 atanh(alpha/2 - sqrt(4+alpha^2)/2)]/2
    ln Q+ = -[2 ln(alpha/(sqrt(alpha^2+4)-2)) + alpha - sqrt(alpha^2+4)]/2

    Q+ < 1 always; Q- < 1 only above the coefficient-level critical ratio.
    """
    alpha = to_mpf(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be > 0")
    s = mp.sqrt(alpha ** 2 + 4)
    ln_q_minus = -(alpha + s + 4 * mp.atanh(alpha / 2 - s / 2)) / 2
    ln_q_plus = -(2 * mp.log(alpha / (s - 2)) + alpha - s) / 2
    return ln_q_minus, ln_q_plus


@functools.lru_cache(maxsize=None)
def appendix_alpha_critical():
    """Ratio below which the non-alternating coefficient peak stops decaying."""
    with mp.workdps(30):
        return _bisect(lambda a: lnQ_limits(a)[0], mpf("0.7"), mpf("1.0"))


@functools.lru_cache(maxsize=None)
def appendix_alpha_star():
    """Ratio where the two coefficient peaks decay at the same rate."""
    with mp.workdps(30):
        return _bisect(lambda a: lnQ_limits(a)[0] - lnQ_limits(a)[1], mpf(1), mpf("1.6"))


class PropositionVerdict(enum.Enum):
    DIVERGENT_ALTERNATING = "divergent_alternating"
    CONVERGENT = "convergent"
    DECAYS_TO_ZERO = "decays_to_zero"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class PropositionClassification:
    verdict: PropositionVerdict
    orders: tuple
    values: tuple
    rel_errors: tuple
    envelope_exponent: Optional[float]


def proposition_case_check(schedule: MomentSchedule, g, N_max: int,
                           dps: int = 30, step: int = 1) -> PropositionClassification:
    """Empirically classify the sequence Z^(N) under a moment schedule.

    Sub-linear schedules diverge with the sign of Z^(N) - Z alternating;
    schedules between linear and quadratic converge to the oracle; faster
    than quadratic the sequence decays to zero with an algebraic
    envelope, whose log-log slope is reported.
    """
    g = to_mpf(g)
    with mp.workdps(3 * dps):
        z_oracle = exact_Z_quartic(g, dps=3 * dps)
    orders = list(range(max(2, step), N_max + 1, step))
    values = []
    rel = []
    for N in orders:
        params = QuarticSCEParams(g=g, N=N, M=schedule.moment(N),
                                  precision=PrecisionPolicy.for_target(max(dps, 16)))
        ev = sce_partition_quartic(params)
        values.append(ev.value.value)
        rel.append(abs(ev.value.value / z_oracle - 1))

    if N_max < 20:
        return PropositionClassification(PropositionVerdict.INCONCLUSIVE,
                                         tuple(orders), tuple(values), tuple(rel), None)

    tail = len(orders) // 3
    diffs = [v - z_oracle for v in values[-tail:]]
    growing = all(abs(values[i]) > abs(values[i - 1]) for i in range(len(values) - tail + 1, len(values)))
    alternating = all(diffs[i] * diffs[i - 1] < 0 for i in range(1, len(diffs)))
    if growing and alternating and abs(values[-1]) > 10 * abs(z_oracle):
        return PropositionClassification(PropositionVerdict.DIVERGENT_ALTERNATING,
                                         tuple(orders), tuple(values), tuple(rel), None)

    shrinking = rel[-1] < rel[len(rel) // 2] < rel[0]
    if shrinking and rel[-1] < mpf("1e-3"):
        return PropositionClassification(PropositionVerdict.CONVERGENT,
                                         tuple(orders), tuple(values), tuple(rel), None)

    # the slow algebraic decay moves the sequence away from the oracle
    deviations = [abs(v - z_oracle) for v in values]
    decaying = all(values[i] < values[i - 1] for i in range(len(values) - tail + 1, len(values)))
    receding = deviations[-1] > deviations[len(deviations) // 2] > deviations[0]
    if decaying and receding:
        xs = [mp.log(mpf(N)) for N in orders[-2 * tail:]]
        ys = [mp.log(v) for v in values[-2 * tail:]]
        n = len(xs)
        sx = sum(xs); sy = sum(ys)
        sxx = sum(x * x for x in xs); sxy = sum(x * y for x, y in zip(xs, ys))
        slope = (n * sxy - sx * sy) / (n * sxx - sx * sx)
        return PropositionClassification(PropositionVerdict.DECAYS_TO_ZERO,
                                         tuple(orders), tuple(values), tuple(rel),
                                         float(slope))

    return PropositionClassification(PropositionVerdict.INCONCLUSIVE,
                                     tuple(orders), tuple(values), tuple(rel), None)
