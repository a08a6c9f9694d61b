"""Arbitrary-precision scalar types and working-precision policy.

All heavy numerics in this package run on raw mpmath values inside
``mp.workdps`` blocks; the wrapper types below are the API-level currency.
They pin a decimal precision to each value and propagate the larger
precision through arithmetic, so that results never silently carry fewer
digits than their operands.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpc, mpf

MIN_DIGITS = 16


class PrecisionError(ArithmeticError):
    """Raised when a computation cannot reach its precision target."""


@dataclass(frozen=True)
class PrecisionPolicy:
    """Target/working precision pair, in decimal digits.

    The wildly alternating inner sums of the expansion lose roughly two
    digits of accuracy per digit of result, so the working precision is
    required to be at least three times the target.  ``guard_rule``
    documents the escalation strategy applied when even that is not
    enough.
    """

    target_digits: int
    working_digits: int
    guard_rule: str = "retry at 4x target when cancellation exceeds working - target"

    def __post_init__(self):
        if self.target_digits < MIN_DIGITS:
            raise ValueError(f"target_digits must be >= {MIN_DIGITS}")
        if self.working_digits < 3 * self.target_digits:
            raise ValueError("working_digits must be >= 3 * target_digits")

    @classmethod
    def for_target(cls, target_digits: int, factor: int = 3) -> "PrecisionPolicy":
        return cls(target_digits, factor * target_digits)

    def escalated(self) -> "PrecisionPolicy":
        return PrecisionPolicy(self.target_digits, self.working_digits + self.target_digits,
                               self.guard_rule)


@contextlib.contextmanager
def working_precision(digits: int):
    """Temporarily set mpmath's decimal precision."""
    with mp.workdps(int(digits)):
        yield


def to_mpf(x, digits: int = 0) -> mpf:
    """Convert ints, Fractions, strings and floats to mpf without double rounding."""
    if isinstance(x, BigReal):
        return x.value
    if isinstance(x, Fraction):
        with mp.workdps(max(mp.dps, digits, MIN_DIGITS)):
            return mpf(x.numerator) / x.denominator
    return mpf(x)


@dataclass(frozen=True)
class BigReal:
    """Real scalar with an explicit decimal precision.

    Arithmetic is performed at the larger of the two operand precisions;
    the result records that precision.
    """

    value: mpf
    precision_digits: int

    def __post_init__(self):
        if self.precision_digits < MIN_DIGITS:
            raise ValueError(f"precision_digits must be >= {MIN_DIGITS}")

    @classmethod
    def of(cls, x, digits: int = MIN_DIGITS) -> "BigReal":
        digits = max(int(digits), MIN_DIGITS)
        with mp.workdps(digits):
            return cls(to_mpf(x, digits), digits)

    def _binary(self, other, op):
        other = other if isinstance(other, BigReal) else BigReal.of(other, self.precision_digits)
        digits = max(self.precision_digits, other.precision_digits)
        with mp.workdps(digits):
            return BigReal(op(self.value, other.value), digits)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binary(other, lambda a, b: b / a)

    def __pow__(self, other):
        return self._binary(other, lambda a, b: a ** b)

    def __neg__(self):
        return BigReal(-self.value, self.precision_digits)

    def __abs__(self):
        return BigReal(abs(self.value), self.precision_digits)

    def __float__(self):
        return float(self.value)

    def __lt__(self, other):
        return self.value < (other.value if isinstance(other, BigReal) else mpf(other))

    def __le__(self, other):
        return self.value <= (other.value if isinstance(other, BigReal) else mpf(other))

    def __gt__(self, other):
        return self.value > (other.value if isinstance(other, BigReal) else mpf(other))

    def __ge__(self, other):
        return self.value >= (other.value if isinstance(other, BigReal) else mpf(other))

    def __repr__(self):
        return f"BigReal({mp.nstr(self.value, min(self.precision_digits, 20))}, dps={self.precision_digits})"


@dataclass(frozen=True)
class BigComplex:
    """Complex scalar built from two BigReals of equal precision.

    Fractional powers follow the principal branch: arguments live in
    (-pi, pi] and arg(z**(1/n)) = arg(z)/n, with the cut on the negative
    real axis.
    """

    re: BigReal
    im: BigReal

    def __post_init__(self):
        if self.re.precision_digits != self.im.precision_digits:
            raise ValueError("re and im must carry equal precision")

    @classmethod
    def of(cls, z, digits: int = MIN_DIGITS) -> "BigComplex":
        digits = max(int(digits), MIN_DIGITS)
        with mp.workdps(digits):
            zc = mpc(z)
            return cls(BigReal(zc.real, digits), BigReal(zc.imag, digits))

    @property
    def precision_digits(self) -> int:
        return self.re.precision_digits

    @property
    def value(self) -> mpc:
        return mpc(self.re.value, self.im.value)

    def conjugate(self) -> "BigComplex":
        return BigComplex(self.re, -self.im)

    def arg(self) -> BigReal:
        with mp.workdps(self.precision_digits):
            return BigReal(mp.arg(self.value), self.precision_digits)

    def root(self, n: int) -> "BigComplex":
        """Principal n-th root: arg of the result is arg(z)/n."""
        with mp.workdps(self.precision_digits):
            return BigComplex.of(self.value ** (mpf(1) / n), self.precision_digits)

    def __abs__(self):
        with mp.workdps(self.precision_digits):
            return BigReal(abs(self.value), self.precision_digits)

    def __repr__(self):
        return f"BigComplex({mp.nstr(self.value, min(self.precision_digits, 20))}, dps={self.precision_digits})"


def stable_to_target(compute, target_digits: int, working_digits: int, probe_extra: int = 10):
    """Evaluate ``compute(dps)`` twice, ``probe_extra`` digits apart.

    Returns the lower-precision result after verifying the first
    ``target_digits`` digits agree; raises PrecisionError otherwise.
    """
    with mp.workdps(working_digits + probe_extra):
        hi = compute(working_digits + probe_extra)
        lo = compute(working_digits)
        scale = abs(hi) if abs(hi) > 0 else mpf(1)
        if abs(hi - lo) > scale * mpf(10) ** (-target_digits):
            raise PrecisionError(
                f"result not stable to {target_digits} digits at working={working_digits}")
    return lo
