"""Bound states of the semi-harmonic well.

A bound state at ``E = -kappa**2`` matches the harmonic-region solution,
carried across the well, onto ``exp(-kappa x)`` on the right. The mismatch
``psi' + kappa psi`` is scanned for sign changes and refined by Brent's
method. ``background="flat"`` replaces the parabola by zero potential, which
gives the ordinary square well (or bare delta well) for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy.optimize import brentq

from semiharmonic import harmonic, stepladder
from semiharmonic.errors import DomainError, NumericalError
from semiharmonic.model import WellConfig, unit_area_symmetric

N_SCAN = 2000
E_XTOL = 1e-13
BACKGROUNDS = ("harmonic", "flat", "ladder")


class SpectrumError(NumericalError):
    """Node count of a located state disagrees with its index."""


@dataclass(frozen=True)
class BoundState:
    e: float
    index: int


def energy_window(cfg: WellConfig) -> tuple[float, float]:
    """Open interval containing every bound state."""
    if cfg.is_delta:
        return -0.5 * cfg.g**2, 0.0
    return -cfg.v0, 0.0


def _edge_pairs(cfg: WellConfig, energies: np.ndarray, background: str, n_ladder: int):
    """Left-edge ``(psi, psi')`` for every energy."""
    x = cfg.x_left
    if background == "harmonic":
        return harmonic.solution_pairs(energies, x)
    if background == "flat":
        return np.ones_like(energies), np.sqrt(-energies)
    if background == "ladder":
        steps = stepladder.discretize_harmonic(stepladder.X_MIN, x, n_ladder)
        pairs = [stepladder.ladder_pair(float(e), steps) for e in energies]
        return np.array([p[0] for p in pairs]), np.array([p[1] for p in pairs])
    raise DomainError(f"unknown background {background!r}; expected one of {BACKGROUNDS}")


def _mismatch(cfg: WellConfig, energies, background: str = "harmonic", n_ladder: int = 100_000):
    e = np.atleast_1d(np.asarray(energies, dtype=float))
    psi, dpsi = _edge_pairs(cfg, e, background, n_ladder)
    if cfg.is_delta:
        dpsi = dpsi - cfg.g * psi
    else:
        m = stepladder._segment_arrays(e + cfg.v0, np.full(e.shape, cfg.width))
        psi, dpsi = m[:, 0, 0] * psi + m[:, 0, 1] * dpsi, m[:, 1, 0] * psi + m[:, 1, 1] * dpsi
    kappa = np.sqrt(-e)
    return (dpsi + kappa * psi) / np.maximum(np.abs(psi), np.abs(dpsi))


def matching_function(cfg: WellConfig, e: float, background: str = "harmonic") -> float:
    """Normalized mismatch ``(psi'(b) + kappa psi(b)) / max(|psi(b)|, |psi'(b)|)``; zero at bound states."""
    lo, hi = energy_window(cfg)
    if cfg.is_delta:
        if not e < 0:
            raise DomainError(f"bound states need e < 0, got {e}")
    elif not lo < e < hi:
        raise DomainError(f"e={e} outside the bound-state window ({lo}, {hi})")
    return float(_mismatch(cfg, [e], background)[0])


def interior_nodes(cfg: WellConfig, e: float, background: str = "harmonic", n: int = 4000) -> int:
    """Sign changes of the bound-state wavefunction inside the well."""
    if cfg.is_delta:
        return 0
    psi_e, dpsi_e = _edge_pairs(cfg, np.array([e]), background, 100_000)
    q = math.sqrt(cfg.v0 + e)
    t = np.linspace(0.0, cfg.width, n + 1)[1:-1]
    psi = psi_e[0] * np.cos(q * t) + dpsi_e[0] / q * np.sin(q * t)
    s = np.sign(psi[psi != 0])
    return int(np.count_nonzero(s[1:] != s[:-1]))


def bound_states(
    cfg: WellConfig,
    background: str = "harmonic",
    n_scan: int = N_SCAN,
    n_ladder: int = 100_000,
    check_nodes: bool = True,
) -> list[BoundState]:
    """All bound states, sorted by energy.

    Raises
    ------
    SpectrumError
        If the ``i``-th state does not have exactly ``i`` interior nodes,
        which signals a missed pair of close roots.
    """
    lo, hi = energy_window(cfg)
    grid = np.linspace(lo, hi, n_scan + 2)[1:-1]
    f = _mismatch(cfg, grid, background, n_ladder)

    def scalar(e: float) -> float:
        return float(_mismatch(cfg, [e], background, n_ladder)[0])

    roots = []
    for i in np.flatnonzero(np.sign(f[:-1]) * np.sign(f[1:]) <= 0):
        if f[i] == 0:
            roots.append(float(grid[i]))
        elif f[i + 1] != 0:
            roots.append(brentq(scalar, grid[i], grid[i + 1], xtol=E_XTOL, rtol=4 * np.finfo(float).eps))
    states = [BoundState(e, i) for i, e in enumerate(sorted(set(roots)))]
    if check_nodes and background != "ladder":
        for st in states:
            nodes = interior_nodes(cfg, st.e, background)
            if nodes != st.index:
                raise SpectrumError(f"state {st.index} at E={st.e} has {nodes} interior nodes")
    return states


def count_by_area(area: float, a_values: Iterable[float], background: str = "harmonic") -> list[int]:
    """Bound-state counts for the family ``b = a``, ``v0 = area / (2a)``."""
    return [len(bound_states(unit_area_symmetric(a, area), background)) for a in a_values]
