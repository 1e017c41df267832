"""Exact solution of the harmonic region ``psi'' = (x**2 - k**2) psi``.

The solution decaying toward ``x -> -inf`` is

    psi(x) = exp(-x**2/2) * [M((1-k2)/4, 1/2, x**2)
                             + 2 x Gamma((3-k2)/4)/Gamma((1-k2)/4) M((3-k2)/4, 3/2, x**2)]

with ``M`` Kummer's function. The gamma ratio is carried as a projective pair
built from reciprocal gammas, so the poles at ``k2 = 1, 3, 5, ...`` are
ordinary points. Only ``psi'/psi`` is used downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from semiharmonic.errors import DomainError, NodeError, PrecisionError, StiffnessError
from semiharmonic.specfun import EPS, kummer_1f1, kummer_1f1_dz, rgamma

X_SERIES_MAX = 3.0
PRECISION_LIMIT = 1e-6
NODE_TOL = 1e-12
ODE_TOL = 1e-12
X_START = -8.0


@dataclass(frozen=True)
class Coefficients:
    c1: float
    c2: float

    def __neg__(self) -> Coefficients:
        return Coefficients(-self.c1, -self.c2)


@dataclass(frozen=True)
class SolutionPair:
    """``(psi, psi')`` at one point, up to a common positive or negative scale.

    ``scale_note`` is the factor relating the literal gamma-ratio solution
    (first coefficient 1) to this pair; it is infinite when the literal
    expression is itself singular.
    """

    psi: float
    dpsi: float
    scale_note: float = 1.0

    @property
    def log_derivative(self) -> float:
        if abs(self.psi) < NODE_TOL * max(abs(self.psi), abs(self.dpsi)):
            raise NodeError("psi vanishes at the evaluation point")
        return self.dpsi / self.psi


def coefficients(k2: float) -> Coefficients:
    """Projective form of ``(1, 2 Gamma((3-k2)/4) / Gamma((1-k2)/4))``.

    Normalized to ``max(|c1|, |c2|) = 1`` with ``c1 >= 0`` (``c2 > 0`` when
    ``c1 == 0``).
    """
    alpha = (1.0 - k2) / 4.0
    c1 = rgamma(alpha + 0.5)
    c2 = 2.0 * rgamma(alpha)
    norm = max(abs(c1), abs(c2))
    c1, c2 = c1 / norm, c2 / norm
    if c1 < 0 or (c1 == 0 and c2 < 0):
        c1, c2 = -c1, -c2
    return Coefficients(c1 + 0.0, c2 + 0.0)


def psi_pair(k2: float, x: float, coeffs: Coefficients | None = None) -> SolutionPair:
    """Series evaluation of the decaying solution and its derivative at ``x``.

    Raises
    ------
    DomainError
        For ``|x| > 3``, where the series loses too many digits.
    PrecisionError
        When the estimated cancellation error exceeds ``1e-6`` of
        ``max(|psi|, |psi'|)``.
    """
    if not abs(x) <= X_SERIES_MAX:
        raise DomainError(f"|x|={abs(x)} outside the series domain |x| <= {X_SERIES_MAX}")
    cf = coefficients(k2) if coeffs is None else coeffs
    alpha = (1.0 - k2) / 4.0
    z = x * x
    m1 = kummer_1f1(alpha, 0.5, z)
    m1z = kummer_1f1_dz(alpha, 0.5, z)
    m2 = kummer_1f1(alpha + 0.5, 1.5, z)
    m2z = kummer_1f1_dz(alpha + 0.5, 1.5, z)

    even = cf.c1 * m1.value
    odd = cf.c2 * x * m2.value
    inner = even + odd
    deven = cf.c1 * 2.0 * x * m1z.value
    dodd = cf.c2 * (m2.value + 2.0 * z * m2z.value)
    dinner = deven + dodd

    gauss = math.exp(-0.5 * z)
    psi = gauss * inner
    dpsi = gauss * (dinner - x * inner)

    err_inner = abs(cf.c1) * m1.est_abs_error + abs(cf.c2 * x) * m2.est_abs_error
    err_inner += EPS * (abs(even) + abs(odd))
    err_dinner = abs(cf.c1) * 2.0 * abs(x) * m1z.est_abs_error
    err_dinner += abs(cf.c2) * (m2.est_abs_error + 2.0 * z * m2z.est_abs_error)
    err_dinner += EPS * (abs(deven) + abs(dodd))
    err = gauss * (err_inner * (1.0 + abs(x)) + err_dinner + EPS * abs(x * inner))
    scale = max(abs(psi), abs(dpsi))
    if err > PRECISION_LIMIT * scale:
        raise PrecisionError(
            f"cancellation error {err:.3g} exceeds {PRECISION_LIMIT} of |psi|,|psi'| ~ {scale:.3g}"
        )
    note = 1.0 / cf.c1 if cf.c1 != 0 else math.inf
    return SolutionPair(psi, dpsi, note)


def log_derivative(k2: float, x: float) -> float:
    """``psi'/psi`` of the decaying solution; independent of normalization."""
    return psi_pair(k2, x).log_derivative


def asymptotic_log_derivative(k2: float, x: float) -> float:
    """Two-term large-|x| expansion of ``psi'/psi`` on the decaying branch (``x < 0``)."""
    return -x + (k2 - 1.0) / (2.0 * x)


def _riccati(t, y, k2):
    return (t * t - k2) - y * y


def _linear(t, y, k2):
    n = y.shape[0] // 2
    psi, dpsi = y[:n], y[n:]
    return np.concatenate([dpsi, (t * t - k2) * psi])


def _solve(fun, span, y0, k2, first_step=None):
    sol = solve_ivp(
        fun,
        span,
        y0,
        method="DOP853",
        rtol=ODE_TOL,
        atol=ODE_TOL,
        args=(k2,),
        first_step=first_step,
    )
    if sol.status != 0 or not np.all(np.isfinite(sol.y[:, -1])):
        raise StiffnessError(f"integration over {span} failed: {sol.message}")
    return sol.y[:, -1]


def log_derivative_ode(k2: float, x: float, x_start: float = X_START) -> float:
    """Independent ODE evaluation of ``psi'/psi`` at ``x``.

    The Riccati equation ``L' = (t**2 - k2) - L**2`` is integrated from
    ``x_start`` through the classically forbidden part of the interval, where
    the decaying solution has no nodes. Beyond the turning point the linear
    equation for ``(psi, psi')`` is used, so nodes do not stop the integrator.
    """
    if not x_start <= -6.0:
        raise DomainError(f"x_start must be <= -6, got {x_start}")
    if not x_start < x <= 0.0:
        raise DomainError(f"need x_start < x <= 0, got x={x}, x_start={x_start}")
    turning = -math.sqrt(k2) if k2 > 0 else 0.0
    x_mid = min(x, turning)
    ell = asymptotic_log_derivative(k2, x_start)
    if x_mid > x_start:
        ell = float(_solve(_riccati, (x_start, x_mid), [ell], k2)[0])
    if x_mid < x:
        psi, dpsi = _solve(_linear, (x_mid, x), np.array([1.0, ell]), k2)
        return SolutionPair(float(psi), float(dpsi)).log_derivative
    return ell


def ode_pairs(k2s, x: float, x_start: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized ``(psi, psi')`` at ``x`` for many ``k2`` by direct ODE integration.

    Used where the series is not certified (``|x| > 3``).
    """
    k2s = np.atleast_1d(np.asarray(k2s, dtype=float))
    if x_start is None:
        x_start = min(X_START, x - 5.0)
    if not x_start < x:
        raise DomainError(f"need x_start < x, got x={x}, x_start={x_start}")
    dpsi0 = asymptotic_log_derivative(k2s, x_start)
    y = _solve(_linear, (x_start, x), np.concatenate([np.ones_like(k2s), dpsi0]), k2s)
    n = k2s.size
    psi, dpsi = y[:n], y[n:]
    norm = np.maximum(np.abs(psi), np.abs(dpsi))
    return psi / norm, dpsi / norm


def solution_pair(k2: float, x: float) -> SolutionPair:
    """``(psi, psi')`` at any ``x <= 0``: series when certified, ODE otherwise."""
    if abs(x) <= X_SERIES_MAX:
        return psi_pair(k2, x)
    psi, dpsi = ode_pairs([k2], x)
    return SolutionPair(float(psi[0]), float(dpsi[0]), math.nan)


def solution_pairs(k2s, x: float) -> tuple[np.ndarray, np.ndarray]:
    k2s = np.atleast_1d(np.asarray(k2s, dtype=float))
    if abs(x) > X_SERIES_MAX:
        return ode_pairs(k2s, x)
    pairs = [psi_pair(float(k2), x) for k2 in k2s]
    return np.array([p.psi for p in pairs]), np.array([p.dpsi for p in pairs])


def ode_residual(k2: float, x: float, h: float = 1e-3) -> float:
    """Relative residual of ``psi'' = (x**2 - k2) psi`` using a 5-point second difference."""
    if not abs(x) <= 2.9:
        raise DomainError(f"|x| must be <= 2.9, got {x}")
    f = [psi_pair(k2, x + j * h).psi for j in (-2, -1, 0, 1, 2)]
    d2 = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h)
    centre = psi_pair(k2, x)
    scale = max(abs(centre.psi), abs(centre.dpsi))
    return abs(d2 - (x * x - k2) * centre.psi) / scale
