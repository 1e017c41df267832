"""Wave reflection from a one-dimensional semi-harmonic square well.

Dimensionless units: the stationary equation is ``-psi'' + V(x) psi = E psi``
with ``V(x) = x**2`` left of the well, ``-v0`` inside it and ``0`` on the
right, so that ``E = k**2``.
"""

from semiharmonic.errors import (
    BracketError,
    DerivativeError,
    DomainError,
    GeometryError,
    GridError,
    NodeError,
    NumericalError,
    ParameterError,
    PoleError,
    PrecisionError,
    SemiHarmonicError,
    StiffnessError,
    VariantError,
)
from semiharmonic.model import WellConfig, delta_config, potential, unit_area_symmetric, wavenumbers
from semiharmonic.scattering import phase_curve, phase_paper, phi_pair, reflection_amplitude
from semiharmonic.spectra import bound_states, count_by_area
from semiharmonic.timing import delay_maxima, delta_limit_ea, find_sign_change, tau_e, tau_p, tau_w

__version__ = "0.1.0"

__all__ = [
    "BracketError",
    "DerivativeError",
    "DomainError",
    "GeometryError",
    "GridError",
    "NodeError",
    "NumericalError",
    "ParameterError",
    "PoleError",
    "PrecisionError",
    "SemiHarmonicError",
    "StiffnessError",
    "VariantError",
    "WellConfig",
    "bound_states",
    "count_by_area",
    "delay_maxima",
    "delta_config",
    "delta_limit_ea",
    "find_sign_change",
    "phase_curve",
    "phase_paper",
    "phi_pair",
    "potential",
    "reflection_amplitude",
    "tau_e",
    "tau_p",
    "tau_w",
    "unit_area_symmetric",
    "wavenumbers",
]
