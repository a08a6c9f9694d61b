"""Shared engine for the rescaled-oscillator partial sums.

Every expansion in this package has the same shape,

    S = pref * sum_{n=0}^{N} base^n / n! * sum_{l=0}^{n} (-1)^l C(n,l)
                                            Gamma(nu + n + r*l) / lam^l,

differing only in (base, lam, r, nu) and the prefactor.  The quartic
oscillator has r = 1, the |x|^q well has r = q/2 - 1, the radial
d-dimensional case has r = 1 with shifted nu, and the two complex
components of the Airy expansion have r = 1/2.  Keeping one code path
makes the q = 4 specialization agree bit for bit with the general one.

The inner sums alternate violently: individual terms can exceed the sum
by many orders of magnitude.  Both summation levels therefore report the
largest intermediate magnitude so callers can verify that the working
precision left enough headroom, and escalate if it did not.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpf


@dataclass
class PartialSumResult:
    total: object              # mpf or mpc, at working precision
    terms: tuple               # per-n contributions, sum(terms) == total
    cancellation: object       # max intermediate magnitude / |total|


def make_gamma_cache():
    cache = {}

    def gamma_at(x):
        v = cache.get(x)
        if v is None:
            v = mp.gamma(x)
            cache[x] = v
        return v

    return gamma_at


def inner_sum_unit_step(n, lam, nu, gamma_start):
    """Inner sum for r = 1 via the exact term ratio.

    t_{l+1} = t_l * (-(n-l)) (nu+n+l) / ((l+1) lam), starting from
    t_0 = Gamma(nu+n); returns (sum, max |term|).
    """
    t = gamma_start
    s = t
    mx = abs(t)
    for l in range(n):
        t = t * (-(n - l)) * (nu + n + l) / ((l + 1) * lam)
        s += t
        a = abs(t)
        if a > mx:
            mx = a
    return s, mx


def inner_sum_general(n, lam, r, nu, gamma_at):
    """Inner sum for arbitrary step r > 0; gamma values come from a cache."""
    s = mpf(0)
    mx = mpf(0)
    binom = mpf(1)
    lam_pow = mpf(1)
    sign = 1
    for l in range(n + 1):
        t = sign * binom * gamma_at(nu + n + r * l) / lam_pow
        s += t
        a = abs(t)
        if a > mx:
            mx = a
        binom = binom * (n - l) / (l + 1)
        lam_pow = lam_pow * lam
        sign = -sign
    return s, mx


def inner_sum_table(N, lam, r, nu):
    """All inner sums for n = 0..N plus their worst intermediate magnitude."""
    sums = []
    maxes = []
    if r == 1:
        gamma_start = mp.gamma(nu)
        for n in range(N + 1):
            s, mx = inner_sum_unit_step(n, lam, nu, gamma_start)
            sums.append(s)
            maxes.append(mx)
            gamma_start = gamma_start * (nu + n)
    else:
        gamma_at = make_gamma_cache()
        for n in range(N + 1):
            s, mx = inner_sum_general(n, lam, r, nu, gamma_at)
            sums.append(s)
            maxes.append(mx)
    return sums, maxes


def assemble_partial_sum(base, inner_sums, inner_maxes) -> PartialSumResult:
    """Accumulate base^n * S_n / n! for n ascending, tracking cancellation."""
    total = mp.mpf(0) * base  # promotes to mpc when base is complex
    terms = []
    inv_fact = mpf(1)
    base_pow = mpf(1) + 0 * base
    worst = mpf(0)
    for n, (s, mx) in enumerate(zip(inner_sums, inner_maxes)):
        if n:
            inv_fact = inv_fact / n
            base_pow = base_pow * base
        term = base_pow * s * inv_fact
        terms.append(term)
        total = total + term
        peak = abs(base_pow) * mx * inv_fact
        if peak > worst:
            worst = peak
        if abs(term) > worst:
            worst = abs(term)
    denom = abs(total)
    cancel = worst / denom if denom > 0 else mp.inf
    return PartialSumResult(total=total, terms=tuple(terms), cancellation=cancel)
