"""Phase time, time delay and their features.

The phase time of the reflected packet splits as ``tau_W = tau_p - tau_E``:
``tau_p = 2a / v_g`` is the free flight across the well and

    tau_E = (1 / v_g) d/dk [2 atan2(phi2, phi1)]

is the time delay. ``tau_E`` is negative on an interval ``(0, E_a)`` above
threshold; the end point ``E_a`` and the maxima of ``tau_E`` are located here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from semiharmonic.errors import BracketError, DerivativeError, DomainError
from semiharmonic.model import WellConfig, delta_config, unit_area_symmetric
from semiharmonic.scattering import phase_paper, unwrap_adaptive

E_GUARD = 1e-4
EA_XTOL = 1e-9
MAX_XTOL = 1e-7
DELTA_LIMIT_A = (0.02, 0.01, 0.005, 0.0025)


@dataclass(frozen=True)
class DelaySample:
    e: float
    tau_p: float
    tau_e: float
    tau_w: float


@dataclass(frozen=True)
class FeatureSet:
    e_a: float | None = None
    maxima: list[float] = field(default_factory=list)


@dataclass(frozen=True)
class DeltaLimit:
    """Sign-change energy of the unit-area family as the width shrinks to zero.

    ``extrapolated`` comes from the finite wells ``a_values``; ``direct`` from
    the delta well of the same area. Converts to ``float`` as ``extrapolated``.
    """

    extrapolated: float
    direct: float
    a_values: tuple[float, ...]
    e_values: tuple[float, ...]

    def __float__(self) -> float:
        return self.extrapolated

    @property
    def discrepancy(self) -> float:
        return abs(self.extrapolated - self.direct)


def group_velocity(e: float) -> float:
    if not e > 0:
        raise DomainError(f"group velocity needs e > 0, got {e}")
    return 2.0 * math.sqrt(e)


def tau_p(cfg: WellConfig, e: float) -> float:
    v = group_velocity(e)
    return 0.0 if cfg.is_delta else 2.0 * cfg.a / v


def _stencil_derivative(f, k: float, h: float) -> float:
    offsets = (-2, -1, -0.5, 0, 0.5, 1, 2)
    raw = np.array([f(k + j * h) for j in offsets])
    jumps = np.diff(raw)
    wrapped = (jumps + np.pi) % (2 * np.pi) - np.pi
    if np.max(np.abs(wrapped)) > np.pi / 2:
        raise DerivativeError(f"phase moves too fast to unwrap at k={k}, h={h}")
    v = np.concatenate([[raw[0]], raw[0] + np.cumsum(wrapped)])
    fm2, fm1, fmh, _, fph, fp1, fp2 = v

    def four_point(a, b, c, d, step):
        return (a - 8.0 * b + 8.0 * c - d) / (12.0 * step)

    coarse = four_point(fm2, fm1, fp1, fp2, h)
    fine = four_point(fm1, fmh, fph, fp1, h / 2)
    return (16.0 * fine - coarse) / 15.0


def tau_e(cfg: WellConfig, e: float, h: float | None = None) -> float:
    """Time delay from a Richardson-extrapolated 4-point k-derivative of ``phase_paper``."""
    if not e >= E_GUARD:
        raise DomainError(f"tau_E is not evaluated below E={E_GUARD}, got {e}")
    k = math.sqrt(e)
    if h is None:
        h = max(1e-4, 1e-3 * k)
    dk = _stencil_derivative(lambda kk: phase_paper(cfg, kk * kk), k, h)
    return dk / group_velocity(e)


def tau_w(cfg: WellConfig, e: float) -> DelaySample:
    tp = tau_p(cfg, e)
    te = tau_e(cfg, e)
    return DelaySample(e, tp, te, tp - te)


def find_sign_change(cfg: WellConfig, e_lo: float, e_hi: float, xtol: float = EA_XTOL) -> float:
    """Energy in ``(e_lo, e_hi)`` where ``tau_E`` changes sign (Brent's method)."""
    f_lo, f_hi = tau_e(cfg, e_lo), tau_e(cfg, e_hi)
    if f_lo * f_hi >= 0:
        raise BracketError(f"tau_E has the same sign at {e_lo} and {e_hi}")
    return brentq(lambda e: tau_e(cfg, e), e_lo, e_hi, xtol=xtol, rtol=4 * np.finfo(float).eps)


def first_sign_change(cfg: WellConfig, e_min: float = 1e-3, e_max: float = 1.0, n: int = 60) -> float:
    """Scan ``tau_E`` on a geometric grid and refine the first negative-to-positive crossing."""
    if not E_GUARD <= e_min < e_max:
        raise DomainError(f"need {E_GUARD} <= e_min < e_max, got {e_min}, {e_max}")
    grid = np.geomspace(e_min, e_max, n)
    prev = tau_e(cfg, grid[0])
    for lo, hi in zip(grid, grid[1:]):
        cur = tau_e(cfg, hi)
        if prev < 0 <= cur:
            return find_sign_change(cfg, lo, hi)
        prev = cur
    raise BracketError(f"no sign change of tau_E in [{e_min}, {e_max}]")


def delay_maxima(cfg: WellConfig, e_min: float, e_max: float, n0: int = 400) -> FeatureSet:
    """Local maxima of ``tau_E``, scanned on the adaptive phase grid and golden-section refined."""
    k_of = math.sqrt
    es, _, _ = unwrap_adaptive(lambda e: phase_paper(cfg, e), max(e_min, E_GUARD), e_max, n0)
    taus = np.array([tau_e(cfg, e) for e in es])
    maxima = []
    for i in range(1, len(es) - 1):
        if taus[i] > taus[i - 1] and taus[i] >= taus[i + 1]:
            lo, hi = es[i - 1], es[i + 1]
            res = minimize_scalar(
                lambda e: -tau_e(cfg, e),
                bracket=(lo, es[i], hi),
                method="golden",
                tol=MAX_XTOL / max(k_of(hi), 1e-3),
            )
            best = float(res.x) if lo <= res.x <= hi else float(es[i])
            maxima.append(best)
    maxima = sorted(set(round(m, 9) for m in maxima))
    return FeatureSet(maxima=maxima)


def _richardson_zero(a_values, e_values) -> float:
    """Neville extrapolation of ``E_a(a)`` to ``a = 0``, polynomial in ``a``."""
    a = np.asarray(a_values, float)
    p = np.asarray(e_values, float).copy()
    n = len(a)
    for m in range(1, n):
        p[: n - m] = (a[m:] * p[: n - m] - a[: n - m] * p[1 : n - m + 1]) / (a[m:] - a[: n - m])
    return float(p[0])


def delta_limit_ea(area: float = 1.0, a_values=DELTA_LIMIT_A, e_max: float = 2.0) -> DeltaLimit:
    """``E_a`` of the zero-width limit, by extrapolation in ``a`` and from the delta well directly."""
    if not area > 0:
        raise DomainError(f"area must be positive, got {area}")
    e_values = tuple(first_sign_change(unit_area_symmetric(a, area), 1e-2, e_max) for a in a_values)
    direct = first_sign_change(delta_config(area), 1e-2, e_max)
    return DeltaLimit(_richardson_zero(a_values, e_values), direct, tuple(a_values), e_values)
