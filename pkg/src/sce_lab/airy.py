"""Complex-plane expansion of the Airy function Ai(z).

Ai is split into two conjugate half-line integrals,

    Ai(z) = e^(-2/3 z^(3/2)) z^(-1/4) / (2 pi) * [Ai~_+ + Ai~_-],
    Ai~_D(z) = z^(1/4) int_0^inf exp(-sqrt(z) t^2 + i D t^3 / 3) dt,

each expanded around a Gaussian weight e^(-sqrt(G_D) t^2).  Conserving
the moment <t^(2M)> separately in each component fixes y_D = G_D^(1/4)
as a root of the cubic

    3 i D y (y^2 - sqrt(z)) - C3(M)/M = 0,

after which the double sum has a z-independent inner part (r = 1/2 in
the shared series engine) and the z dependence enters only through
y_D and the factor (1 - sqrt(z)/sqrt(G_D))^n.

Root selection follows the integral representation: the physical root is
the one continued from z^(1/4) at small M.  Both roots must keep
|arg y| < pi/4 for the Gaussian integrals to converge; when the tracked
root leaves that cone it is replaced by the in-cone root approaching the
large-M asymptote e^(-i D pi/6) (C3/(3M))^(1/3).  On the ray
arg z = 2 pi/3 the tracked root collides with the one continued from 0
at the moment where the cubic's discriminant vanishes,
C3(M)/M = sqrt(4/3) |z|^(3/4); all such events are logged.

All square and fourth roots are principal-branch.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence

from mpmath import mp, mpc, mpf

from . import series
from .precision import BigComplex, PrecisionError, PrecisionPolicy, to_mpf
from .quartic import SCEEvaluation, _bisect
from .special import airy_reference

__all__ = [
    "AirySCEParams",
    "RootTrack",
    "RootEvent",
    "RootAmbiguityError",
    "c3_over_m",
    "airy_cubic_roots",
    "select_root",
    "collision_M",
    "airy_sce",
    "stokes_profile",
    "StokesSector",
]

class RootAmbiguityError(RuntimeError):
    """Two candidate roots equidistant away from any collision."""


class StokesSector(enum.Enum):
    MONOTONE_CONVERGENT = "monotone-convergent"
    REDUCED_RATE = "reduced-rate"
    INITIAL_EXPLOSION = "initial-explosion"


@dataclass(frozen=True)
class AirySCEParams:
    z: object
    N: int
    M: object
    precision: PrecisionPolicy = field(default_factory=lambda: PrecisionPolicy.for_target(24))

    def __post_init__(self):
        with mp.workdps(self.precision.working_digits):
            if abs(mp.arg(mpc(self.z))) > mp.pi:
                raise ValueError("arg z must lie in (-pi, pi]")
        if self.N < 0 or to_mpf(self.M) <= 0:
            raise ValueError("need N >= 0 and M > 0")


@dataclass(frozen=True)
class RootEvent:
    kind: str          # "cone-exit" | "collision-proximity"
    M: float


@dataclass(frozen=True)
class RootTrack:
    delta: int
    selected: object                  # final y at M_target
    events: tuple
    path: tuple                       # (M, y) continuation samples
    rejected_final: tuple             # the other two roots at M_target


def c3_over_m(M):
    """C_3(M)/M = [Gamma(M+2)/Gamma(M+1/2) - 1/sqrt(pi)] / M, ~ sqrt(M) at large M."""
    M = to_mpf(M)
    if M <= 0:
        raise ValueError("M must be > 0")
    half = mpf(1) / 2
    return (mp.gamma(M + 2) / mp.gamma(M + half) - 1 / mp.gamma(half)) / M


def airy_cubic_roots(M, z, delta: int) -> tuple:
    """All three roots of 3 i delta y (y^2 - sqrt(z)) = C3(M)/M.

    Depressed-cubic closed form with principal branches, then one Newton
    step per root at working precision to stabilize their ordering for
    continuation.
    """
    if delta not in (1, -1):
        raise ValueError("delta must be +1 or -1")
    z = mpc(z)
    c = c3_over_m(M)
    # y^3 + p y + q = 0 with p = -sqrt(z), q = i delta c / 3
    p = -mp.sqrt(z)
    q = mpc(0, delta) * c / 3
    disc_term = mp.sqrt(q * q / 4 + p ** 3 / 27)
    u3 = -q / 2 + disc_term
    if abs(u3) < abs(-q / 2 - disc_term):
        u3 = -q / 2 - disc_term
    u = u3 ** (mpf(1) / 3)
    omega = mp.exp(2j * mp.pi / 3)
    roots = []
    for k in range(3):
        uk = u * omega ** k
        y = uk - p / (3 * uk) if uk != 0 else mpc(0)
        # one Newton polish: f = y^3 + p y + q
        for _ in range(2):
            f = y ** 3 + p * y + q
            df = 3 * y ** 2 + p
            if df != 0:
                y = y - f / df
        roots.append(y)
    return tuple(roots)


def _in_cone(y) -> bool:
    return abs(mp.arg(y)) < mp.pi / 4


def _asymptote(M, delta):
    return (c3_over_m(M) / 3) ** (mpf(1) / 3) * mp.exp(-mpc(0, 1) * delta * mp.pi / 6)


def _discriminant_small(M, z, delta, tol=mpf("0.2")) -> bool:
    # cubic y^3 + p y + q: discriminant -4p^3 - 27q^2; "small" is judged
    # loosely since a continuation step straddles the zero rather than
    # landing on it
    p = -mp.sqrt(mpc(z))
    q = mpc(0, delta) * c3_over_m(M) / 3
    disc = -4 * p ** 3 - 27 * q * q
    scale = max(abs(p) ** 3, abs(q) ** 2, mpf(1))
    return abs(disc) < tol * scale


def select_root(M_target, z, delta: int, m_start=mpf("0.01"), ratio=None,
                dps: int = 0) -> tuple:
    """Continuation-selected root y_D at M_target plus its RootTrack.

    Geometric M grid (default ratio 1.1) seeded at the root nearest
    z^(1/4); the step refines tenfold whenever another root comes within
    ten step-motions of the tracked one.  Cone exits switch to the
    in-cone root nearest the large-M asymptote; a RootAmbiguityError is
    raised only for an equidistant pair away from a discriminant zero.
    """
    dps = int(dps) if dps else mp.dps
    with mp.workdps(dps):
        z = mpc(z)
        target = to_mpf(M_target)
        ratio = to_mpf(ratio) if ratio else mpf("1.1")
        if z == 0:
            y = _asymptote(target, delta)
            roots = airy_cubic_roots(target, z, delta)
            y = min(roots, key=lambda r: abs(r - y))
            rest = tuple(r for r in roots if r != y)
            return y, RootTrack(delta, y, (), ((float(target), y),), rest)

        events = []
        path = []
        M = min(mpf(m_start), target)
        roots = airy_cubic_roots(M, z, delta)
        seed = z ** (mpf(1) / 4)
        y, _tied = _nearest(roots, seed, M, z, delta)
        while True:
            if not _in_cone(y):
                asym = _asymptote(M, delta)
                roots_here = airy_cubic_roots(M, z, delta)
                cone = [r for r in roots_here if _in_cone(r)]
                y = min(cone or roots_here, key=lambda r: abs(r - asym))
                events.append(RootEvent("cone-exit", float(M)))
            path.append((float(M), y))
            if M >= target:
                roots = airy_cubic_roots(M, z, delta)
                break
            M_next = min(M * ratio, target)
            roots = airy_cubic_roots(M_next, z, delta)
            y_next, tied = _nearest(roots, y, M_next, z, delta)
            others = sorted(roots, key=lambda r: abs(r - y_next))[1:]
            separation = min(abs(o - y_next) for o in others)
            if not tied and separation < 10 * abs(y_next - y) and M_next < target:
                # refine the step tenfold while another root crowds the track
                M_next = min(M * (1 + (ratio - 1) / 10), target)
                roots = airy_cubic_roots(M_next, z, delta)
                y_next, tied = _nearest(roots, y, M_next, z, delta)
                if _discriminant_small(M_next, z, delta) and not any(
                        e.kind == "collision-proximity" for e in events):
                    events.append(RootEvent("collision-proximity", float(M_next)))
            if tied:
                # exact tie: the symmetric pair straddling the old root right
                # past the discriminant zero; log the handoff point itself
                events.append(RootEvent("collision-proximity", float(M_next)))
            y, M = y_next, M_next
        rest = tuple(sorted(roots, key=lambda r: abs(r - y))[1:])
        return y, RootTrack(delta, y, tuple(events), tuple(path), rest)


def _nearest(roots, ref, M, z, delta):
    """Continuation step: the root closest to ``ref``.

    An exact tie can only happen by symmetry, at the root collision on a
    Stokes ray; there the pair is handed off deterministically to the
    member heading for the in-cone asymptote, and the caller logs the
    event.  A tie away from any discriminant zero is a genuine ambiguity
    and raises.
    """
    ordered = sorted(roots, key=lambda r: abs(r - ref))
    d0, d1 = abs(ordered[0] - ref), abs(ordered[1] - ref)
    if d1 > 0 and (d1 - d0) < mpf("1e-9") * d1:
        if _discriminant_small(M, z, delta):
            asym = _asymptote(M, delta)
            return min(ordered[:2], key=lambda r: abs(r - asym)), True
        raise RootAmbiguityError(
            f"equidistant roots at M={float(M):.6g} away from any collision")
    return ordered[0], False


def collision_M(z_abs, dps: int = 30):
    """Moment at which the tracked and origin roots collide on arg z = 2 pi/3.

    Solves C3(M)/M = sqrt(4/3) |z|^(3/4); the left side is increasing in
    M (like sqrt(M)), so bisection with a doubling bracket suffices.
    Asymptotically M ~ (4/3) |z|^(3/2).
    """
    z_abs = to_mpf(z_abs)
    if z_abs <= 0:
        raise ValueError("|z| must be > 0")
    with mp.workdps(dps):
        target = mp.sqrt(mpf(4) / 3) * z_abs ** (mpf(3) / 4)
        hi = mpf(4)
        while c3_over_m(hi) < target:
            hi *= 2
        return _bisect(lambda M: c3_over_m(M) - target, mpf("1e-6"), hi)


def airy_sce(params: AirySCEParams) -> SCEEvaluation:
    """Order-N approximant Ai^(N)(z); conjugation-symmetric by construction.

    Builds the shared real inner sums once (r = 1/2, lam = C3/M), selects
    y_+ and y_- independently, and assembles

        Ai^(N) = e^(-2/3 z^(3/2)) / (4 pi)
                 * sum_n [b_+^n / y_+ + b_-^n / y_-] S_n / n!,

    with b_D = 1 - sqrt(z)/y_D^2.  The z^(1/4) z^(-1/4) pair is folded so
    z = 0 needs no special casing beyond its exact cubic roots.  The
    reduced value Ai~^(N) = z^(1/4) * (2 pi e^(+2/3 z^(3/2))) Ai^(N) is
    reported in the terms' metadata-carrying twin field.
    """
    pol = params.precision
    target = pol.target_digits
    working = pol.working_digits
    for _attempt in range(3):
        with mp.workdps(working):
            z = mpc(params.z)
            M = to_mpf(params.M)
            lam = c3_over_m(M)
            y_plus, track_p = select_root(M, z, +1)
            y_minus, track_m = select_root(M, z, -1)
            for y in (y_plus, y_minus):
                if not _in_cone(y):
                    raise PrecisionError("selected root left the convergence cone")
            sums, maxes = series.inner_sum_table(params.N, lam, mpf(1) / 2, mpf(1) / 2)
            b_p = 1 - mp.sqrt(z) / (y_plus * y_plus)
            b_m = 1 - mp.sqrt(z) / (y_minus * y_minus)
            pref = mp.exp(-mpf(2) / 3 * z ** mpf("1.5")) / (4 * mp.pi)
            terms = []
            total = mpc(0)
            bp_pow = mpc(1)
            bm_pow = mpc(1)
            inv_fact = mpf(1)
            worst = mpf(0)
            for n in range(params.N + 1):
                if n:
                    inv_fact = inv_fact / n
                    bp_pow *= b_p
                    bm_pow *= b_m
                term = pref * inv_fact * sums[n] * (bp_pow / y_plus + bm_pow / y_minus)
                terms.append(term)
                total += term
                peak = abs(pref) * inv_fact * maxes[n] * (abs(bp_pow / y_plus) + abs(bm_pow / y_minus))
                worst = max(worst, peak, abs(term))
            cancel = float(mp.log10(worst / abs(total))) if abs(total) > 0 else 0.0
        if cancel <= working - target - 5:
            break
        working = max(4 * target, working + int(cancel) + 10)
    else:
        raise PrecisionError(f"cancellation consumed {cancel:.0f} digits")

    return SCEEvaluation(
        value=BigComplex.of(total, working),
        terms=tuple(terms),
        G=(y_plus ** 4, y_minus ** 4),
        K=lam,
        remainder_bound=None,
        alpha=(M / params.N) if params.N else None,
        well="airy",
        q=3,
        working_digits=working,
        cancellation_digits=cancel,
    )


def airy_sce_tilde(params: AirySCEParams):
    """Reduced value Ai~^(N)(z) = 2 pi z^(1/4) e^(2/3 z^(3/2)) Ai^(N)(z)."""
    ev = airy_sce(params)
    with mp.workdps(ev.working_digits):
        z = mpc(params.z)
        return 2 * mp.pi * z ** mpf("0.25") * mp.exp(mpf(2) / 3 * z ** mpf("1.5")) * ev.value.value


@dataclass(frozen=True)
class StokesRecord:
    arg_z: float
    orders: tuple
    rel_errors: tuple
    max_base_magnitude: float
    events: tuple
    sector: StokesSector


def stokes_profile(z_abs, arg_grid: Sequence, N: int, schedule, dps: int = 30,
                   orders: Optional[Sequence[int]] = None) -> list:
    """Error-vs-order profiles across the Stokes sectors at fixed |z|.

    For each argument in ``arg_grid`` the expansion is evaluated at the
    requested orders (default 1..N) with M = schedule(n), the trajectory
    magnitude max |1 - sqrt(z)/sqrt(G_+)| is extracted from the
    continuation path at M = schedule(N), and the sector is classified:
    trajectories kept inside the unit circle converge monotonically,
    protruding ones below the second Stokes line converge at a reduced
    rate, and beyond it the error initially grows.
    """
    orders = list(orders) if orders is not None else list(range(1, N + 1))
    records = []
    for a in arg_grid:
        a = to_mpf(a)
        with mp.workdps(dps * 3):
            z = to_mpf(z_abs) * mp.exp(mpc(0, 1) * a)
            exact = airy_reference(z, prec=dps * 3)
            rels = []
            for n in orders:
                ev = airy_sce(AirySCEParams(z=z, N=n, M=schedule(n),
                                            precision=PrecisionPolicy.for_target(dps)))
                rels.append(float(abs((ev.value.value - exact) / exact)))
            _, track = select_root(schedule(N), z, +1)
            mags = [float(abs(1 - mp.sqrt(z) / (y * y))) for _, y in track.path]
            max_mag = max(mags)
        if max_mag <= 1.0:
            sector = StokesSector.MONOTONE_CONVERGENT
        elif abs(float(a)) <= float(2 * mp.pi / 3) + 1e-12:
            sector = StokesSector.REDUCED_RATE
        else:
            sector = StokesSector.INITIAL_EXPLOSION
        records.append(StokesRecord(
            arg_z=float(a),
            orders=tuple(orders),
            rel_errors=tuple(rels),
            max_base_magnitude=max_mag,
            events=track.events,
            sector=sector,
        ))
    return records
