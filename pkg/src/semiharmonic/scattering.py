"""Reflection amplitude and phase shift of the semi-harmonic well.

A wave ``exp(-ikx)`` incident from the right is reflected into
``S exp(ikx)``. With ``(psi, psi')`` the harmonic-region solution carried to
the right edge ``x_R`` of the well,

    S = exp(-2ik x_R) (ik psi + psi') / (ik psi - psi'),

which has modulus one for every real pair. S is always formed from the pair,
never from ``psi'/psi``, so nodes of ``psi`` at ``x_R`` are regular points.

Sign convention: ``delta = arg S`` increases with the phase accumulated in
the well, and the phase time of the reflected packet is
``tau_W = PHASE_TIME_SIGN * d(delta)/dE``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from semiharmonic import harmonic, stepladder
from semiharmonic.errors import DomainError, GeometryError, GridError, NodeError
from semiharmonic.model import WellConfig

# tau_W = PHASE_TIME_SIGN * d(arg S)/dE reproduces the positive flight time tau_p
PHASE_TIME_SIGN = -1.0
MAX_POINTS = 200_000
GAP = math.pi / 2


@dataclass(frozen=True)
class ReflectionPoint:
    e: float
    s_re: float
    s_im: float
    delta: float

    @property
    def s(self) -> complex:
        return complex(self.s_re, self.s_im)


@dataclass(frozen=True)
class PhiPair:
    phi1: float
    phi2: float


def edge_pair(cfg: WellConfig, e: float) -> tuple[float, float]:
    """Harmonic solution ``(psi, psi')`` at the left edge of the well (``x = -a`` or ``0``)."""
    p = harmonic.solution_pair(e, cfg.x_left)
    return p.psi, p.dpsi


def interior_pair(cfg: WellConfig, e: float) -> tuple[float, float]:
    """``(psi, psi')`` just inside the right edge, after crossing the well or the delta."""
    psi, dpsi = edge_pair(cfg, e)
    if cfg.is_delta:
        return psi, dpsi - cfg.g * psi
    return stepladder.segment_matrix(e, -cfg.v0, cfg.width).apply(psi, dpsi)


def interior_log_derivative(cfg: WellConfig, e: float) -> float:
    psi, dpsi = interior_pair(cfg, e)
    if abs(psi) < harmonic.NODE_TOL * max(abs(psi), abs(dpsi)):
        raise NodeError("psi vanishes at the right edge of the well")
    return dpsi / psi


def _amplitude(k: float, x_r: float, psi: float, dpsi: float) -> complex:
    num = complex(dpsi, k * psi)
    return -cmath.exp(-2j * k * x_r) * num / num.conjugate()


def reflection_amplitude(cfg: WellConfig, e: float) -> ReflectionPoint:
    """Unitary reflection amplitude ``S = exp(i delta)``; ``delta`` is the principal value."""
    if not e > 0:
        raise DomainError(f"scattering requires e > 0, got {e}")
    psi, dpsi = interior_pair(cfg, e)
    s = _amplitude(math.sqrt(e), cfg.x_right, psi, dpsi)
    return ReflectionPoint(e, s.real, s.imag, cmath.phase(s))


def ladder_reflection(cfg: WellConfig, e: float, n: int = 100_000, x_min: float = stepladder.X_MIN) -> complex:
    """Oracle: S from stepladder propagation of the whole region ``[x_min, x_R]``."""
    if not e > 0:
        raise DomainError(f"scattering requires e > 0, got {e}")
    steps = stepladder.discretize_harmonic(x_min, cfg.x_left, n)
    if cfg.is_delta:
        psi, dpsi = stepladder.ladder_pair(e, steps)
        dpsi -= cfg.g * psi
    else:
        steps = steps.then(stepladder.well_ladder((cfg.x_left, cfg.x_right), cfg.v0))
        psi, dpsi = stepladder.ladder_pair(e, steps)
    return _amplitude(math.sqrt(e), cfg.x_right, psi, dpsi)


def _wrap(d: float) -> float:
    return (d + math.pi) % (2 * math.pi) - math.pi


def unwrap_adaptive(f, e_min: float, e_max: float, n0: int, max_points: int = MAX_POINTS):
    """Sample a phase ``f(E)`` (known modulo 2 pi) on an adaptive grid and unwrap it.

    Intervals whose wrapped increment exceeds pi/2 are bisected until every
    gap obeys the bound. Returns ``(energies, raw values, unwrapped values)``.
    """
    if not 0 < e_min < e_max:
        raise DomainError(f"need 0 < e_min < e_max, got {e_min}, {e_max}")
    if n0 < 2:
        raise DomainError(f"need n0 >= 2, got {n0}")
    grid = list(np.linspace(e_min, e_max, n0))
    vals = [f(e) for e in grid]
    es, fs = [grid[0]], [vals[0]]
    stack = list(zip(grid[:0:-1], vals[:0:-1]))
    count = len(grid)
    # depth-first so the output stays sorted
    while stack:
        e_hi, f_hi = stack[-1]
        if abs(_wrap(f_hi - fs[-1])) <= GAP:
            es.append(e_hi)
            fs.append(f_hi)
            stack.pop()
            continue
        e_mid = 0.5 * (es[-1] + e_hi)
        if count >= max_points or not es[-1] < e_mid < e_hi:
            raise GridError(f"phase refinement budget exhausted near E={e_hi:.10g}")
        stack.append((e_mid, f(e_mid)))
        count += 1
    unwrapped = [_wrap(fs[0])]
    for prev, cur in zip(fs, fs[1:]):
        unwrapped.append(unwrapped[-1] + _wrap(cur - prev))
    return np.array(es), np.array(fs), np.array(unwrapped)


def phase_curve(cfg: WellConfig, e_min: float, e_max: float, n0: int = 400) -> list[ReflectionPoint]:
    """Continuously unwrapped ``delta(E)`` on an adaptive energy grid."""
    cache: dict[float, ReflectionPoint] = {}

    def principal(e: float) -> float:
        cache[e] = reflection_amplitude(cfg, e)
        return cache[e].delta

    es, _, deltas = unwrap_adaptive(principal, e_min, e_max, n0)
    return [ReflectionPoint(e, cache[e].s_re, cache[e].s_im, float(d)) for e, d in zip(es, deltas)]


def phi_pair(cfg: WellConfig, e: float, literal: bool = False) -> PhiPair:
    """The two functions whose double-angle arctangent carries the time delay.

    With ``L = psi'/psi`` at ``x = -a`` and phase ``2qa`` across the well,

        phi1 = -q sin 2qa + L cos 2qa
        phi2 =  k cos 2qa + (k/q) L sin 2qa

    so that ``(phi2, phi1)`` is proportional to ``(k psi, psi')`` at the right
    edge. ``literal=True`` evaluates an alternative form instead
    (``-q/2`` in ``phi1``; ``phi2 = -k cos 2qa - (L/q) sin 2qa``), which does
    not satisfy the matching conditions and is kept for comparison only.
    For the delta variant ``2qa = 0`` and ``L`` includes the jump ``-g``.
    """
    k, q, c, s, psi, dpsi = _phi_ingredients(cfg, e)
    if abs(psi) < harmonic.NODE_TOL * max(abs(psi), abs(dpsi)):
        raise NodeError("psi vanishes at the left well edge")
    ell = dpsi / psi
    if literal:
        return PhiPair(-0.5 * q * s + ell * c, -k * c - ell / q * s)
    return PhiPair(-q * s + ell * c, k * c + k * ell / q * s)


def _phi_ingredients(cfg: WellConfig, e: float):
    if not e > 0:
        raise DomainError(f"scattering requires e > 0, got {e}")
    if not cfg.is_symmetric:
        raise GeometryError(f"closed form requires a == b, got a={cfg.a}, b={cfg.b}")
    k = math.sqrt(e)
    psi, dpsi = edge_pair(cfg, e)
    if cfg.is_delta:
        return k, k, 1.0, 0.0, psi, dpsi - cfg.g * psi
    q = math.sqrt(cfg.v0 + e)
    return k, q, math.cos(2 * q * cfg.a), math.sin(2 * q * cfg.a), psi, dpsi


def phase_paper(cfg: WellConfig, e: float) -> float:
    """``2 atan2(phi2, phi1)``, the continuous lift of ``arctan(2 phi1 phi2 / (phi1**2 - phi2**2))``.

    Evaluated with ``phi`` multiplied through by ``psi(-a)``, which leaves the
    double angle unchanged modulo 2 pi and removes the poles of ``L``.
    """
    k, q, c, s, psi, dpsi = _phi_ingredients(cfg, e)
    phi1 = -q * s * psi + c * dpsi
    phi2 = k * c * psi + k / q * s * dpsi
    return 2.0 * math.atan2(phi2, phi1)


def phase_slope(cfg: WellConfig, e: float, h: float | None = None) -> float:
    """``d(delta)/dE`` by a central difference of the locally unwrapped phase."""
    if h is None:
        h = 1e-4 * e
    if not e - h > 0:
        raise DomainError(f"step {h} too large at e={e}")
    lo = reflection_amplitude(cfg, e - h).delta
    hi = reflection_amplitude(cfg, e + h).delta
    return _wrap(hi - lo) / (2 * h)


def slope_sign_changes(cfg: WellConfig, e_min: float, e_max: float, n0: int = 400, xtol: float = 1e-10) -> list[float]:
    """Energies where the unwrapped ``delta(E)`` turns from falling to rising or back."""
    pts = phase_curve(cfg, e_min, e_max, n0)
    es = np.array([p.e for p in pts])
    slopes = np.diff([p.delta for p in pts]) / np.diff(es)
    out = []
    for i in np.flatnonzero(np.sign(slopes[:-1]) != np.sign(slopes[1:])):
        lo, hi = es[i], es[i + 2]
        f_lo, f_hi = phase_slope(cfg, lo), phase_slope(cfg, hi)
        if f_lo * f_hi < 0:
            out.append(brentq(lambda e: phase_slope(cfg, e), lo, hi, xtol=xtol))
    return out
