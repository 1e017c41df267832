"""Gamma function and Kummer's confluent hypergeometric function.

Only real arguments are supported. ``kummer_1f1`` is a plain Taylor series,
certified for ``|z| <= 25``; callers needing larger ``|z|`` must integrate the
underlying ODE instead.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

from semiharmonic.errors import DomainError, ParameterError, PoleError, PrecisionError

EPS = sys.float_info.epsilon
POLE_TOL = 1e-12
Z_MAX = 25.0
MAX_TERMS = 5000


@dataclass(frozen=True)
class SpecialValue:
    """A function value together with an estimate of its absolute error."""

    value: float
    est_abs_error: float

    def __float__(self) -> float:
        return self.value


def _is_nonpositive_integer(x: float, tol: float = POLE_TOL) -> bool:
    return x <= tol and abs(x - round(x)) <= tol


def gamma(x: float) -> SpecialValue:
    """Gamma function with typed pole reporting.

    Raises
    ------
    PoleError
        If ``x`` is within ``1e-12`` of a non-positive integer.
    """
    if not math.isfinite(x):
        raise DomainError(f"gamma argument must be finite, got {x!r}")
    if _is_nonpositive_integer(x):
        raise PoleError(f"gamma has a pole at x={x!r}")
    value = math.gamma(x)
    return SpecialValue(value, 4.0 * EPS * abs(value))


def rgamma(x: float) -> float:
    """Reciprocal gamma ``1/Gamma(x)``, an entire function (zero at the poles)."""
    try:
        return 1.0 / gamma(x).value
    except PoleError:
        return 0.0


def _check_args(c: float, z: float) -> None:
    if _is_nonpositive_integer(c):
        raise ParameterError(f"1F1 undefined for non-positive integer c={c!r}")
    if not abs(z) <= Z_MAX:
        raise DomainError(f"|z|={abs(z)!r} outside the certified series domain |z| <= {Z_MAX}")


def kummer_1f1(a: float, c: float, z: float) -> SpecialValue:
    """Kummer's function ``1F1(a; c; z)`` by direct summation of its Taylor series.

    Terms follow ``t[n+1] = t[n] * (a+n) z / ((c+n)(n+1))``; summation stops
    once three consecutive terms fall below machine epsilon relative to the
    partial sum. The error estimate accounts for cancellation through the
    largest partial sum or term encountered.
    """
    _check_args(c, z)
    term = 1.0
    total = 1.0
    biggest = 1.0
    small = 0
    for n in range(MAX_TERMS):
        term *= (a + n) * z / ((c + n) * (n + 1))
        total += term
        biggest = max(biggest, abs(total), abs(term))
        if abs(term) <= EPS * abs(total):
            small += 1
            if small == 3:
                break
        else:
            small = 0
    else:
        raise PrecisionError(f"1F1({a}, {c}; {z}) did not converge in {MAX_TERMS} terms")
    # observed rounding error stays below ~3 eps * biggest over the whole parameter box
    return SpecialValue(total, 4.0 * EPS * (biggest + abs(total)))


def kummer_1f1_dz(a: float, c: float, z: float) -> SpecialValue:
    """Derivative ``d/dz 1F1(a; c; z) = (a/c) 1F1(a+1; c+1; z)``."""
    _check_args(c, z)
    if a == 0.0:
        return SpecialValue(0.0, 0.0)
    inner = kummer_1f1(a + 1.0, c + 1.0, z)
    scale = abs(a / c)
    return SpecialValue(a / c * inner.value, scale * inner.est_abs_error)
