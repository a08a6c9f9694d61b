"""Special functions and quadrature oracles.

Gamma, the modified Bessel functions, the exponential integral E1 and
tanh-sinh quadrature are delegated to mpmath, which scales to thousands
of digits; this module adds the domain checks, the principal-value
convention for E1 at negative arguments, and the closed-form partition
function oracles used to validate every expansion in the package.

The Airy reference is implemented here from scratch via the everywhere
convergent Maclaurin series (DLMF 9.4.1), so the package carries an
oracle that is independent of mpmath's own Airy implementation.
"""

from __future__ import annotations

from mpmath import mp, mpc, mpf

from .precision import BigComplex, BigReal, MIN_DIGITS

__all__ = [
    "SpecialFunctionDomainError",
    "gamma_fn",
    "bessel_K",
    "bessel_I",
    "exp_integral_E1",
    "airy_reference",
    "quadrature_Z",
    "exact_Z_quartic",
    "exact_Z_double_well",
]


class SpecialFunctionDomainError(ValueError):
    """Argument outside the function's domain (e.g. a gamma pole)."""


def _unwrap(x):
    if isinstance(x, BigReal):
        return x.value, x.precision_digits, "real"
    if isinstance(x, BigComplex):
        return x.value, x.precision_digits, "complex"
    if isinstance(x, mpc) or isinstance(x, complex):
        return mpc(x), mp.dps, "raw"
    return mpf(x), mp.dps, "raw"


def _rewrap(value, kind, digits):
    if kind == "real":
        return BigReal(value, digits)
    if kind == "complex":
        return BigComplex.of(value, digits)
    return value


def gamma_fn(x):
    """Gamma function; raises at the poles on the non-positive integers.

    mpmath uses the reflection formula internally for Re x < 1/2, so a
    single entry point covers both half-planes at any precision.
    """
    v, digits, kind = _unwrap(x)
    re = v.real if isinstance(v, mpc) else v
    im = v.imag if isinstance(v, mpc) else mpf(0)
    if im == 0 and re <= 0 and re == mp.floor(re):
        raise SpecialFunctionDomainError(f"gamma pole at {v}")
    with mp.workdps(digits):
        return _rewrap(mp.gamma(v), kind, digits)


def bessel_K(nu, x):
    """Modified Bessel function of the second kind, x > 0."""
    v, digits, kind = _unwrap(x)
    if v <= 0:
        raise SpecialFunctionDomainError("bessel_K requires x > 0")
    nu_v = nu.value if isinstance(nu, BigReal) else mpf(nu)
    with mp.workdps(digits):
        return _rewrap(mp.besselk(nu_v, v), kind, digits)


def bessel_I(nu, x):
    """Modified Bessel function of the first kind, x > 0."""
    v, digits, kind = _unwrap(x)
    if v <= 0:
        raise SpecialFunctionDomainError("bessel_I requires x > 0")
    nu_v = nu.value if isinstance(nu, BigReal) else mpf(nu)
    with mp.workdps(digits):
        return _rewrap(mp.besseli(nu_v, v), kind, digits)


def exp_integral_E1(x):
    """Exponential integral E1(x) = int_x^inf e^-t / t dt for x > 0.

    For x < 0 the integral is divergent at t = 0 and the Cauchy principal
    value is returned, E1(-s) = -Ei(s) for s > 0.  That real-valued branch
    is the one entering the closed-form hyperasymptotic terminants.
    """
    v, digits, kind = _unwrap(x)
    if v == 0:
        raise SpecialFunctionDomainError("E1 undefined at 0")
    with mp.workdps(digits):
        out = mp.e1(v) if v > 0 else -mp.ei(-v)
        return _rewrap(out, kind, digits)


def airy_reference(z, prec: int = 0):
    """Ai(z) from its Maclaurin series, valid in the whole complex plane.

    Ai(z) = Ai(0) f(z) + Ai'(0) g(z) with

        f(z) = sum_k z^(3k)   prod-style terms t_{k+1} = t_k z^3 / ((3k+2)(3k+3)),
        g(z) = sum_k z^(3k+1) terms u_{k+1} = u_k z^3 / ((3k+3)(3k+4)).

    On rays where Ai is exponentially small the series cancels heavily,
    so the working precision is padded by ~(2/3)|z|^(3/2) digits.
    """
    if isinstance(z, BigComplex) or isinstance(z, BigReal):
        v, digits, kind = _unwrap(z)
    else:
        v, digits, kind = mpc(z), max(mp.dps, MIN_DIGITS), "raw"
    prec = int(prec) if prec else digits
    az = abs(v)
    guard = int(0.9 * float(az) ** 1.5) + 15
    with mp.workdps(prec + guard):
        zc = mpc(v)
        ai0 = mpf(3) ** (mpf(-2) / 3) / mp.gamma(mpf(2) / 3)
        aip0 = -(mpf(3) ** (mpf(-1) / 3)) / mp.gamma(mpf(1) / 3)
        z3 = zc ** 3
        f = t = mpc(1)
        g = u = zc
        k = 0
        tol = mpf(10) ** (-(prec + guard))
        while True:
            t = t * z3 / ((3 * k + 2) * (3 * k + 3))
            u = u * z3 / ((3 * k + 3) * (3 * k + 4))
            f += t
            g += u
            k += 1
            if abs(t) < tol and abs(u) < tol:
                break
            if k > 100000:
                raise RuntimeError("airy series failed to terminate")
        out = ai0 * f + aip0 * g
    with mp.workdps(prec):
        out = mpc(out)
        if kind == "raw" and (not isinstance(z, (complex, mpc))) and out.imag == 0:
            out = out.real
        return _rewrap(out, kind, prec) if kind != "raw" else out


def quadrature_Z(q, g, d: int = 1, well: str = "single", dps: int = 0):
    """Anharmonic partition integral by adaptive tanh-sinh quadrature.

    Computes int_0^inf x^(d-1) exp(-(s x^2/2 + g x^q)) dx with s = +1 for
    the single well and s = -1 for the double well; the d = 1 result is
    doubled so it equals the full-line integral.  The double-well case
    requires g > 0 (the integral diverges otherwise), and the integration
    interval is split at the potential minimum to keep the quadrature
    rule honest about the off-origin peak.
    """
    dps = int(dps) if dps else mp.dps
    with mp.workdps(dps + 10):
        g_v = g.value if isinstance(g, BigReal) else mpf(g)
        q_v = q.value if isinstance(q, BigReal) else mpf(q)
        if well not in ("single", "double"):
            raise ValueError("well must be 'single' or 'double'")
        if well == "double" and g_v <= 0:
            raise SpecialFunctionDomainError("double-well integral diverges for g <= 0")
        if g_v < 0:
            raise SpecialFunctionDomainError("g must be >= 0")
        sign = 1 if well == "single" else -1

        def integrand(x):
            if x == 0:
                return mpf(0) if d > 1 else mpf(1 if sign == 1 else 1)
            return x ** (d - 1) * mp.exp(-(sign * x * x / 2 + g_v * x ** q_v))

        points = [mpf(0)]
        if well == "double":
            xmin = mp.sqrt(1 / (2 * g_v)) / mp.sqrt(2)  # stationary point of -x^2/2 + g x^q at q=4
            if q_v != 4:
                # generic stationary point: x^(q-2) = 1/(q g)
                xmin = (1 / (q_v * g_v)) ** (1 / (q_v - 2))
            points += [xmin, 2 * xmin]
        else:
            points += [mpf(1)]
        points += [mp.inf]
        val = mp.quad(integrand, points)
        if d == 1:
            val = 2 * val
    with mp.workdps(dps):
        return +val


def exact_Z_quartic(g, dps: int = 0):
    """Closed form sqrt(1/(8g)) e^(1/(32g)) K_(1/4)(1/(32g)); sqrt(2 pi) at g = 0."""
    dps = int(dps) if dps else mp.dps
    with mp.workdps(dps + 10):
        g_v = g.value if isinstance(g, BigReal) else mpf(g)
        if g_v < 0:
            raise SpecialFunctionDomainError("g must be >= 0")
        if g_v == 0:
            val = mp.sqrt(2 * mp.pi)
        else:
            x = 1 / (32 * g_v)
            val = mp.sqrt(1 / (8 * g_v)) * mp.exp(x) * mp.besselk(mpf(1) / 4, x)
    with mp.workdps(dps):
        return +val


def exact_Z_double_well(g, dps: int = 0):
    """Closed form (pi/sqrt(16g)) e^(1/(32g)) [I_(1/4) + I_(-1/4)](1/(32g))."""
    dps = int(dps) if dps else mp.dps
    with mp.workdps(dps + 10):
        g_v = g.value if isinstance(g, BigReal) else mpf(g)
        if g_v <= 0:
            raise SpecialFunctionDomainError("double well requires g > 0")
        x = 1 / (32 * g_v)
        val = (mp.pi / mp.sqrt(16 * g_v)) * mp.exp(x) * (
            mp.besseli(mpf(1) / 4, x) + mp.besseli(mpf(-1) / 4, x))
    with mp.workdps(dps):
        return +val
