"""Piecewise-constant potentials and transfer matrices for ``(psi, psi')``.

Replacing the parabola by midpoint rectangles gives an approximation that is
second order in the step width and shares no code with the hypergeometric
solution, so it serves as an oracle for it. The same rectangles define the
cutoff-frequency profile of the waveguide analogue.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from semiharmonic.errors import DomainError, NodeError

FLAT_TOL = 1e-12
NODE_TOL = 1e-12
X_MIN = -8.0


@dataclass(frozen=True)
class StepPotential:
    """Potential ``values[i]`` on ``(edges[i], edges[i+1])``."""

    edges: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        edges = tuple(float(x) for x in self.edges)
        values = tuple(float(v) for v in self.values)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "values", values)
        if len(values) < 1 or len(edges) != len(values) + 1:
            raise DomainError("need n >= 1 values and n + 1 edges")
        if any(b <= a for a, b in zip(edges, edges[1:])):
            raise DomainError("edges must be strictly increasing")
        if not all(math.isfinite(v) for v in values + edges):
            raise DomainError("edges and values must be finite")

    @property
    def widths(self) -> np.ndarray:
        return np.diff(np.asarray(self.edges))

    def then(self, other: StepPotential) -> StepPotential:
        """Concatenate with a ladder that starts where this one ends."""
        if other.edges[0] != self.edges[-1]:
            raise DomainError("ladders must share the joining edge")
        return StepPotential(self.edges + other.edges[1:], self.values + other.values)


@dataclass(frozen=True)
class TransferMatrix:
    m11: float
    m12: float
    m21: float
    m22: float

    @property
    def det(self) -> float:
        return self.m11 * self.m22 - self.m12 * self.m21

    def as_array(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]])

    def __matmul__(self, other: TransferMatrix) -> TransferMatrix:
        m = self.as_array() @ other.as_array()
        return TransferMatrix(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    def apply(self, psi: float, dpsi: float) -> tuple[float, float]:
        return self.m11 * psi + self.m12 * dpsi, self.m21 * psi + self.m22 * dpsi


def segment_matrix(e: float, v: float, w: float) -> TransferMatrix:
    """Propagate ``(psi, psi')`` across a segment of width ``w`` and potential ``v``."""
    if not w > 0:
        raise DomainError(f"segment width must be positive, got {w}")
    m = _segment_arrays(np.array([e - v]), np.array([w]))
    return TransferMatrix(*(float(x) for x in m[0].ravel()))


def _segment_arrays(kin: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Stack of segment matrices, shape ``(n, 2, 2)``, for local kinetic energies ``kin = E - V``."""
    kin, w = np.broadcast_arrays(np.asarray(kin, float), np.asarray(w, float))
    out = np.empty(kin.shape + (2, 2))
    osc = kin > FLAT_TOL
    eva = kin < -FLAT_TOL
    flat = ~(osc | eva)

    kap = np.sqrt(kin[osc])
    th = kap * w[osc]
    c, s = np.cos(th), np.sin(th)
    out[osc] = np.stack([np.stack([c, s / kap], -1), np.stack([-kap * s, c], -1)], -2)

    mu = np.sqrt(-kin[eva])
    th = mu * w[eva]
    ch, sh = np.cosh(th), np.sinh(th)
    out[eva] = np.stack([np.stack([ch, sh / mu], -1), np.stack([mu * sh, ch], -1)], -2)

    one, zero = np.ones(flat.sum()), np.zeros(flat.sum())
    out[flat] = np.stack([np.stack([one, w[flat]], -1), np.stack([zero, one], -1)], -2)
    return out


def discretize_harmonic(x_min: float, x_match: float, n: int) -> StepPotential:
    """Midpoint-rule rectangles for ``V = x**2`` on ``[x_min, x_match]``."""
    if not x_min < x_match <= 0:
        raise DomainError(f"need x_min < x_match <= 0, got {x_min}, {x_match}")
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    edges = np.linspace(x_min, x_match, n + 1)
    mids = 0.5 * (edges[:-1] + edges[1:])
    return StepPotential(tuple(edges), tuple(mids**2))


def _ordered_product(mats: np.ndarray) -> np.ndarray:
    """``M[n-1] @ ... @ M[0]``, rescaling every partial product to unit max-norm.

    Pairwise (log-depth) reduction; the rescaling plays the role of per-step
    renormalization and does not change the projective result.
    """
    while mats.shape[0] > 1:
        if mats.shape[0] % 2:
            mats = np.concatenate([mats, np.eye(2)[None]], axis=0)
        mats = mats[1::2] @ mats[0::2]
        mats /= np.abs(mats).max(axis=(1, 2), keepdims=True)
    return mats[0]


def ladder_matrix(e: float, steps: StepPotential) -> np.ndarray:
    """Total transfer matrix of the ladder, up to a positive scale."""
    kin = e - np.asarray(steps.values)
    return _ordered_product(_segment_arrays(kin, steps.widths))


def ladder_pair(e: float, steps: StepPotential) -> tuple[float, float]:
    """``(psi, psi')`` at the right end for the solution decaying to the left of ``edges[0]``."""
    v_first = steps.values[0]
    if not e < v_first:
        raise DomainError(f"e={e} must lie below the leftmost step value {v_first}")
    m = ladder_matrix(e, steps)
    psi, dpsi = m @ np.array([1.0, math.sqrt(v_first - e)])
    norm = max(abs(psi), abs(dpsi))
    return float(psi / norm), float(dpsi / norm)


def ladder_log_derivative(e: float, steps: StepPotential) -> float:
    psi, dpsi = ladder_pair(e, steps)
    if abs(psi) < NODE_TOL * max(abs(psi), abs(dpsi)):
        raise NodeError("psi vanishes at the end of the ladder")
    return dpsi / psi


def cutoff_profile(steps: StepPotential, e0: float) -> list[float]:
    """Cutoff frequencies ``sqrt(V_i + e0)`` of the waveguide sections."""
    shifted = [v + e0 for v in steps.values]
    if min(shifted) < 0:
        raise DomainError("baseline shift leaves a negative section V_i + e0 < 0")
    return [math.sqrt(s) for s in shifted]


def harmonic_ladder(x_match: float, n: int, x_min: float = X_MIN) -> StepPotential:
    return discretize_harmonic(x_min, x_match, n)


def well_ladder(edges: Sequence[float], v0: float) -> StepPotential:
    """Single flat-bottom segment of depth ``v0`` between two edges."""
    return StepPotential(tuple(edges), (-v0,))
