"""Well geometry, unit conventions and the unit-area family.

Units are chosen so that hbar**2/(2m) = 1 and the harmonic background is
exactly ``x**2``: the scattering energy is ``E = k**2`` and the wavenumber
inside the well is ``q = sqrt(v0 + E)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from semiharmonic.errors import DomainError, VariantError


class Variant(str, Enum):
    FINITE = "finite"
    DELTA = "delta"


@dataclass(frozen=True)
class WellConfig:
    """Semi-harmonic well.

    Finite: ``V = x**2`` for ``x < -a``, ``V = -v0`` on ``(-a, b)`` and
    ``V = 0`` for ``x > b``. Delta: ``V = -g delta(x)`` with the harmonic
    background on ``x < 0`` and a flat region on ``x > 0``.
    """

    a: float = 0.0
    b: float = 0.0
    v0: float = 0.0
    variant: Variant = Variant.FINITE
    g: float = 0.0

    def __post_init__(self) -> None:
        if self.variant is Variant.FINITE:
            if not (self.a >= 0 and self.b >= 0):
                raise DomainError(f"a and b must be non-negative, got a={self.a}, b={self.b}")
            if not self.a + self.b > 0:
                raise DomainError("well width a + b must be positive")
            if not self.v0 > 0:
                raise DomainError(f"well depth v0 must be positive, got {self.v0}")
            if not all(math.isfinite(v) for v in (self.a, self.b, self.v0)):
                raise DomainError("well parameters must be finite")
        else:
            if not (self.g > 0 and math.isfinite(self.g)):
                raise DomainError(f"delta strength must be positive, got {self.g}")

    @property
    def is_delta(self) -> bool:
        return self.variant is Variant.DELTA

    @property
    def area(self) -> float:
        if self.is_delta:
            return self.g
        return (self.a + self.b) * self.v0

    @property
    def width(self) -> float:
        return 0.0 if self.is_delta else self.a + self.b

    @property
    def x_left(self) -> float:
        """Left well edge, where the harmonic region ends."""
        return 0.0 if self.is_delta else -self.a

    @property
    def x_right(self) -> float:
        """Right well edge, where the reflected wave is matched."""
        return 0.0 if self.is_delta else self.b

    @property
    def is_symmetric(self) -> bool:
        return self.is_delta or self.a == self.b


def unit_area_symmetric(a: float, area: float = 1.0) -> WellConfig:
    """Well with ``b = a`` and ``v0 = area / (2a)``; unit area by default."""
    if not a > 0:
        raise DomainError(f"half-width must be positive (use delta_config for a = 0), got {a}")
    if not area > 0:
        raise DomainError(f"area must be positive, got {area}")
    return WellConfig(a=a, b=a, v0=area / (2.0 * a))


def delta_config(g: float) -> WellConfig:
    """Delta well ``-g delta(x)`` on the semi-harmonic background."""
    if not g > 0:
        raise DomainError(f"delta strength must be positive, got {g}")
    return WellConfig(variant=Variant.DELTA, g=g)


def potential(cfg: WellConfig, x: float) -> float:
    if cfg.is_delta:
        raise VariantError("the delta well has no pointwise potential")
    if x < -cfg.a:
        return x * x
    if x <= cfg.b:
        return -cfg.v0
    return 0.0


def wavenumbers(cfg: WellConfig, e: float) -> tuple[float, float]:
    """Return ``(k, q)`` for a scattering energy ``e > 0``.

    For the delta variant ``q`` equals ``k`` (there is no well interior).
    """
    if not e > 0:
        raise DomainError(f"scattering requires e > 0, got {e}")
    k = math.sqrt(e)
    if cfg.is_delta:
        return k, k
    return k, math.sqrt(cfg.v0 + e)
