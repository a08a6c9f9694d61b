"""Least-squares fitting of convergence trends.

The measured error sequences follow log10 |R/Z| = C - A N - B N^s with a
stretched-exponent power s of 1/2 (oscillator wells) or 2/3 (Airy).  The
model is linear in (A, B, C), so the fit is a 3x3 normal-equation solve,
done in high precision so synthetic data reproduce their generating
parameters essentially exactly.

chi2 here is the root-mean-square residual,
sqrt((1/L) sum (C - A N - B N^s - y)^2), matching how the trend quality
is quoted alongside the fitted rates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from mpmath import mp, mpf

from .precision import to_mpf

__all__ = ["FitModel", "fit_convergence", "DegenerateGridError"]


class DegenerateGridError(ValueError):
    """Fewer points than parameters, or collinear design columns."""


@dataclass(frozen=True)
class FitModel:
    A: object
    B: object
    C: object
    s: object
    chi2: object
    chi2_B0: object       # rms residual of the refit with B frozen at 0
    n_points: int

    def predict(self, N):
        N = to_mpf(N)
        return self.C - self.A * N - self.B * N ** to_mpf(self.s)


def _solve_normal(cols, ys):
    k = len(cols)
    ata = mp.matrix(k, k)
    atb = mp.matrix(k, 1)
    for i in range(k):
        for j in range(k):
            ata[i, j] = mp.fsum(cols[i][t] * cols[j][t] for t in range(len(ys)))
        atb[i] = mp.fsum(cols[i][t] * ys[t] for t in range(len(ys)))
    try:
        sol = mp.lu_solve(ata, atb)
    except ZeroDivisionError as exc:
        raise DegenerateGridError("degenerate N grid: singular normal equations") from exc
    return [sol[i] for i in range(k)]


def fit_convergence(orders: Sequence, log10_rel_errors: Sequence,
                    exponent_s=mpf(1) / 2, dps: int = 50) -> FitModel:
    """Fit (A, B, C) of log10|R/Z| = C - A N - B N^s.

    Requires at least five points on a non-degenerate grid; also reports
    the rms residual of the pure-exponential refit (B = 0), whose jump
    relative to chi2 measures how essential the stretched term is.
    """
    if len(orders) != len(log10_rel_errors):
        raise ValueError("orders and errors must have equal length")
    if len(orders) < 5:
        raise DegenerateGridError("need at least 5 points")
    if len(set(float(n) for n in orders)) < 3:
        raise DegenerateGridError("need at least 3 distinct orders")
    s = to_mpf(exponent_s)
    with mp.workdps(dps):
        ns = [to_mpf(n) for n in orders]
        ys = [to_mpf(y) for y in log10_rel_errors]
        col_a = [-n for n in ns]
        col_b = [-(n ** s) for n in ns]
        col_c = [mpf(1)] * len(ns)
        A, B, C = _solve_normal([col_a, col_b, col_c], ys)
        resid = [C - A * n - B * n ** s - y for n, y in zip(ns, ys)]
        chi2 = mp.sqrt(mp.fsum(r * r for r in resid) / len(resid))
        A0, C0 = _solve_normal([col_a, col_c], ys)
        resid0 = [C0 - A0 * n - y for n, y in zip(ns, ys)]
        chi2_b0 = mp.sqrt(mp.fsum(r * r for r in resid0) / len(resid0))
    return FitModel(A=A, B=B, C=C, s=s, chi2=chi2, chi2_B0=chi2_b0, n_points=len(ns))
