"""Scenario parameters, unit conversions and the saturation number.

Everything is stored in linear units. Powers quoted in dB are converted once,
at the command-line boundary, with :func:`db_to_linear`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

#: Eve antenna count used for the worst-case eavesdropper (N_e -> infinity).
INFINITE = math.inf


class SecrecyError(Exception):
    """Base class for errors raised by this package."""


class DomainError(SecrecyError, ValueError):
    """Input outside the domain of a formula (e.g. zero noise in a finite-N path)."""


class DivergenceError(DomainError):
    """The requested quantity is +infinity (e.g. an infinite-antenna limit with no jamming)."""


class WorstCaseRequired(DomainError):
    """Raised when finite-Eve formulas receive worst-case Eve parameters.

    Use :mod:`spatialsec.worst_case` for N_e = INFINITE or sigma2_e = 0.
    """


class ConfigError(SecrecyError, ValueError):
    """Invalid scenario or command configuration."""


class NumericalError(SecrecyError, ArithmeticError):
    """A numerical precondition failed (non-PSD matrix, rank deficiency)."""


class Dimension(enum.Enum):
    CIRCULAR_2D = "2d"
    SPHERICAL_3D = "3d"


class SystemKind(enum.Enum):
    WIRETAP = "wiretap"
    BASIC_JAMMER = "basic"
    AN_JAMMER = "an"


@dataclass(frozen=True)
class SpatialConstraint:
    """Aperture of radius ``radius_wavelengths`` (r / lambda) in 2D or 3D."""

    radius_wavelengths: float
    dimension: Dimension = Dimension.CIRCULAR_2D

    def __post_init__(self):
        if not (self.radius_wavelengths > 0 and math.isfinite(self.radius_wavelengths)):
            raise ConfigError(f"radius must be positive and finite, got {self.radius_wavelengths!r}")
        if not isinstance(self.dimension, Dimension):
            object.__setattr__(self, "dimension", Dimension(self.dimension))

    @property
    def saturation(self) -> int:
        return saturation_number(self)


@dataclass(frozen=True)
class LinkGains:
    alpha_b: float = 1.0
    alpha_e: float = 1.0
    beta_b: float = 1.0
    beta_e: float = 1.0

    def __post_init__(self):
        for name in ("alpha_b", "alpha_e", "beta_b", "beta_e"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ConfigError(f"{name} must be positive and finite, got {v!r}")


@dataclass(frozen=True)
class PowerNoiseConfig:
    """Transmit power, jamming power and noise variances, all linear."""

    p_t: float
    p_j: float = 0.0
    sigma2_b: float = 1.0
    sigma2_e: float = 1.0

    def __post_init__(self):
        for name in ("p_t", "p_j", "sigma2_b", "sigma2_e"):
            v = getattr(self, name)
            if not (v >= 0 and math.isfinite(v)):
                raise ConfigError(f"{name} must be nonnegative and finite, got {v!r}")


@dataclass(frozen=True)
class SystemParams:
    """Full scenario: system kind, gains, powers, apertures and antenna counts.

    ``n_e`` may be :data:`INFINITE` for the worst-case eavesdropper. For
    ``SystemKind.WIRETAP`` the jamming power is ignored by every formula.
    """

    kind: SystemKind
    gains: LinkGains
    power: PowerNoiseConfig
    bob_constraint: SpatialConstraint
    eve_constraint: SpatialConstraint
    n_b: int
    n_e: float | int = 1

    def __post_init__(self):
        if not isinstance(self.kind, SystemKind):
            object.__setattr__(self, "kind", SystemKind(self.kind))
        if isinstance(self.n_b, bool) or int(self.n_b) != self.n_b or self.n_b < 1:
            raise ConfigError(f"n_b must be a positive integer, got {self.n_b!r}")
        object.__setattr__(self, "n_b", int(self.n_b))
        if self.n_e != INFINITE:
            if isinstance(self.n_e, bool) or int(self.n_e) != self.n_e or self.n_e < 1:
                raise ConfigError(f"n_e must be a positive integer or INFINITE, got {self.n_e!r}")
            object.__setattr__(self, "n_e", int(self.n_e))

    @property
    def nsat_b(self) -> int:
        return saturation_number(self.bob_constraint)

    @property
    def nsat_e(self) -> int:
        return saturation_number(self.eve_constraint)

    @property
    def is_worst_case(self) -> bool:
        return self.n_e == INFINITE or self.power.sigma2_e == 0.0

    def with_kind(self, kind: SystemKind) -> SystemParams:
        return replace(self, kind=kind)

    def with_power(self, **changes) -> SystemParams:
        return replace(self, power=replace(self.power, **changes))

    def worst_case(self) -> SystemParams:
        """Copy with the worst-case eavesdropper: N_e = INFINITE, sigma2_e = 0."""
        return replace(self, n_e=INFINITE, power=replace(self.power, sigma2_e=0.0))


@dataclass(frozen=True)
class CapacityResult:
    """Bob, Eve and secrecy capacities in bits/s/Hz."""

    c_b: float
    c_e: float
    c_s: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "c_s", max(self.c_b - self.c_e, 0.0))


def saturation_number(constraint: SpatialConstraint) -> int:
    """Antenna count beyond which capacity growth becomes logarithmic.

    ``2*ceil(pi*e*r) + 1`` for a circular aperture and ``(ceil(pi*e*r) + 1)**2``
    for a spherical one, with ``r`` in wavelengths.
    """
    m = math.ceil(math.pi * math.e * constraint.radius_wavelengths)
    if constraint.dimension is Dimension.SPHERICAL_3D:
        return (m + 1) ** 2
    return 2 * m + 1


def db_to_linear(x_db: float) -> float:
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x: float) -> float:
    if not x > 0:
        raise DomainError(f"linear_to_db needs a positive value, got {x!r}")
    return 10.0 * math.log10(x)
