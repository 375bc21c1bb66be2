"""Monte-Carlo channel simulator for checking the closed-form capacities.

Receive antennas are placed in a circular aperture (uniform linear or uniform
circular array), the receive correlation follows the 2D isotropic-scattering
kernel ``J_0(2*pi*d/lambda)``, and transmit/jammer antennas are uncorrelated.
Each realization draws fresh channels and evaluates the instantaneous log-det
capacity. The mean over realizations is compared with the correlation-based
approximation and with the piecewise closed form.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .closed_form import capacity_jammed, capacity_unjammed
from .model import ConfigError, Dimension, NumericalError, SpatialConstraint, saturation_number
from .numerics import (
    EPS_PSD,
    hermitian_sqrt,
    j0_kernel_matrix,
    jammed_logdet_capacity,
    logdet_capacity,
    null_space_basis,
    sample_correlated_gaussian,
)

DEFAULT_REALIZATIONS = 200


class Layout(enum.Enum):
    UNIFORM_LINEAR = "ula"
    UNIFORM_CIRCULAR = "uca"


class Jamming(enum.Enum):
    NONE = "none"
    BASIC = "basic"
    AN = "an"


@dataclass(frozen=True, eq=False)
class ArrayGeometry:
    layout: Layout
    count: int
    radius_wavelengths: float
    positions: np.ndarray


def build_geometry(layout, count, radius) -> ArrayGeometry:
    """Antenna positions (in wavelengths) inside a circular aperture of radius ``radius``.

    UCA: ``count`` points equally spaced on the circle, the first at angle 0.
    ULA: ``count`` points equally spaced on a diameter, endpoints included; a
    single antenna sits at the centre.
    """
    layout = Layout(layout)
    count = int(count)
    if count < 1 or not radius > 0:
        raise ConfigError(f"need count >= 1 and radius > 0, got {count}, {radius}")
    if layout is Layout.UNIFORM_CIRCULAR:
        angles = 2.0 * np.pi * np.arange(count) / count
        pos = np.column_stack([radius * np.cos(angles), radius * np.sin(angles)])
    else:
        x = np.linspace(-radius, radius, count) if count > 1 else np.zeros(1)
        pos = np.column_stack([x, np.zeros(count)])
    pos.setflags(write=False)
    return ArrayGeometry(layout, count, float(radius), pos)


def correlation_matrix(geometry: ArrayGeometry, model="isotropic_2d") -> np.ndarray:
    """Receive correlation matrix with entries ``J_0(2*pi*d_kl)``, ``d`` in wavelengths."""
    if model != "isotropic_2d":
        raise ConfigError(f"unknown correlation model {model!r}")
    r = j0_kernel_matrix(geometry.positions)
    w = np.linalg.eigvalsh(r)
    if w[0] < -EPS_PSD * np.max(np.abs(w)):
        raise NumericalError(f"correlation model produced a non-PSD matrix (min eigenvalue {w[0]:.3e})")
    return r


@dataclass(frozen=True)
class ReceiverLink:
    """Link parameters for one receiver, linear units."""

    alpha: float = 1.0
    beta: float = 1.0
    p_t: float = 10.0
    p_j: float = 0.0
    sigma2: float = 1.0

    def __post_init__(self):
        if not self.sigma2 > 0:
            raise ConfigError("Monte-Carlo capacities need sigma2 > 0")


@dataclass(eq=False)
class ChannelEnsemble:
    """A batch of channel realizations sharing a receive array and seed."""

    geometry: ArrayGeometry
    n_t: int = 100
    n_j: int = 100
    realizations: int = DEFAULT_REALIZATIONS
    seed: int = 0
    receiver_correlation: np.ndarray = None
    _sqrt_r: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        if self.n_t < 1 or self.n_j < 1 or self.realizations < 1:
            raise ConfigError("n_t, n_j and realizations must be >= 1")
        if self.receiver_correlation is None:
            self.receiver_correlation = correlation_matrix(self.geometry)
        self._sqrt_r = hermitian_sqrt(self.receiver_correlation)

    @property
    def n_receive(self) -> int:
        return self.geometry.count

    def channel(self, columns, index, role):
        return sample_correlated_gaussian(
            self.receiver_correlation, columns, self.seed, index, role, sqrt_r=self._sqrt_r
        )


@dataclass(frozen=True, eq=False)
class ValidationPoint:
    n_receive: int
    mc_mean: float
    mc_stderr: float
    approx_corr: float
    approx_piecewise: float
    samples: np.ndarray = field(repr=False)

    @property
    def single_realization(self) -> bool:
        return self.samples.size < 2

    @property
    def rel_gap(self) -> float:
        return abs(self.mc_mean - self.approx_corr) / abs(self.approx_corr) if self.approx_corr else math.inf


@dataclass(frozen=True, eq=False)
class ValidationCurve:
    scenario: str
    points: tuple[ValidationPoint, ...]


def _summarise(samples):
    samples = np.asarray(samples, dtype=float)
    if samples.size < 2:
        return float(samples.mean()), 0.0
    return float(samples.mean()), float(samples.std(ddof=1) / math.sqrt(samples.size))


def _nsat(ens: ChannelEnsemble):
    return saturation_number(SpatialConstraint(ens.geometry.radius_wavelengths, Dimension.CIRCULAR_2D))


def _unjammed_sample(ens: ChannelEnsemble, link: ReceiverLink, index):
    h = ens.channel(ens.n_t, index, "h")
    return logdet_capacity((link.alpha * link.p_t / (link.sigma2 * ens.n_t)) * (h @ h.conj().T))


def _basic_sample(ens: ChannelEnsemble, link: ReceiverLink, index):
    if link.beta * link.p_j == 0.0:
        return _unjammed_sample(ens, link, index)
    h = ens.channel(ens.n_t, index, "h")
    g = ens.channel(ens.n_j, index, "g")
    signal = (link.alpha * link.p_t / ens.n_t) * (h @ h.conj().T)
    interference = (link.beta * link.p_j / ens.n_j) * (g @ g.conj().T)
    return jammed_logdet_capacity(signal, interference, link.sigma2)


def jammed_split_approximation(r, link: ReceiverLink) -> float:
    """Correlation-based jammed capacity as a difference of two log-dets."""
    s = link.sigma2
    return logdet_capacity(((link.alpha * link.p_t + link.beta * link.p_j) / s) * r) - logdet_capacity(
        (link.beta * link.p_j / s) * r
    )


def true_capacity_unjammed(ens: ChannelEnsemble, link: ReceiverLink) -> ValidationPoint:
    """Mean instantaneous capacity with equal power over ``n_t`` transmit antennas."""
    samples = np.array([_unjammed_sample(ens, link, k) for k in range(ens.realizations)])
    mean, se = _summarise(samples)
    approx = logdet_capacity((link.alpha * link.p_t / link.sigma2) * ens.receiver_correlation)
    piecewise = capacity_unjammed(ens.n_receive, _nsat(ens), link.alpha * link.p_t, link.sigma2)
    return ValidationPoint(ens.n_receive, mean, se, approx, piecewise, samples)


def true_capacity_basic_jammed(ens: ChannelEnsemble, link: ReceiverLink) -> ValidationPoint:
    """Mean instantaneous capacity under equal-power basic jamming from ``n_j`` antennas.

    Signal and jamming channels share the receive correlation. With zero
    jamming power each realization equals the unjammed one for the same seed.
    """
    samples = np.array([_basic_sample(ens, link, k) for k in range(ens.realizations)])
    mean, se = _summarise(samples)
    approx = jammed_split_approximation(ens.receiver_correlation, link)
    piecewise = capacity_jammed(
        ens.n_receive, _nsat(ens), link.alpha * link.p_t, link.beta * link.p_j, link.sigma2
    )
    return ValidationPoint(ens.n_receive, mean, se, approx, piecewise, samples)


def an_equivalent_channel(ens: ChannelEnsemble, n_b, index, bob_sqrt_r=None):
    """Draw Bob's jammer channel, its null-space basis Z and Eve's equivalent channel K = G_e Z.

    Returns ``(g_bob, z, k)``. Bob's jammer channel is white unless
    ``bob_sqrt_r`` (a square root of Bob's receive correlation) is given.
    """
    if not ens.n_j > n_b:
        raise ConfigError(f"AN jamming needs n_j > n_b (got n_j={ens.n_j}, n_b={n_b})")
    eye = np.eye(n_b) if bob_sqrt_r is None else None
    g_bob = sample_correlated_gaussian(eye, ens.n_j, ens.seed, index, "g_bob", sqrt_r=bob_sqrt_r)
    z = null_space_basis(g_bob)
    g_eve = ens.channel(ens.n_j, index, "g")
    return g_bob, z, g_eve @ z


def _an_sample(ens: ChannelEnsemble, n_b, link: ReceiverLink, index, bob_sqrt_r):
    h = ens.channel(ens.n_t, index, "h")
    signal = (link.alpha * link.p_t / ens.n_t) * (h @ h.conj().T)
    if link.beta * link.p_j == 0.0:
        return logdet_capacity(signal / link.sigma2)
    _, _, k = an_equivalent_channel(ens, n_b, index, bob_sqrt_r)
    interference = (link.beta * link.p_j / (ens.n_j - n_b)) * (k @ k.conj().T)
    return jammed_logdet_capacity(signal, interference, link.sigma2)


def true_capacity_an_jammed(ens_eve: ChannelEnsemble, n_b, link: ReceiverLink, bob_correlation=None):
    """Mean instantaneous Eve capacity under AN jamming nulled towards an ``n_b``-antenna Bob."""
    bob_sqrt = None if bob_correlation is None else hermitian_sqrt(bob_correlation)
    samples = np.array([_an_sample(ens_eve, n_b, link, k, bob_sqrt) for k in range(ens_eve.realizations)])
    mean, se = _summarise(samples)
    approx = jammed_split_approximation(ens_eve.receiver_correlation, link)
    piecewise = capacity_jammed(
        ens_eve.n_receive, _nsat(ens_eve), link.alpha * link.p_t, link.beta * link.p_j, link.sigma2
    )
    return ValidationPoint(ens_eve.n_receive, mean, se, approx, piecewise, samples)


@dataclass(frozen=True)
class ValidationConfig:
    jamming: Jamming = Jamming.NONE
    layout: Layout = Layout.UNIFORM_CIRCULAR
    radius_wavelengths: float = 1.0
    dimension: Dimension = Dimension.CIRCULAR_2D
    n_values: tuple[int, ...] = (1, 5, 10, 20, 40, 60, 80, 100)
    n_t: int = 100
    n_j: int = 100
    n_b: int = 1
    realizations: int = DEFAULT_REALIZATIONS
    seed: int = 0
    link: ReceiverLink = ReceiverLink()

    @property
    def tag(self) -> str:
        return f"{self.jamming.value}-{self.layout.value}"


FIG9 = ValidationConfig(jamming=Jamming.NONE, link=ReceiverLink(p_t=10.0, p_j=0.0))
FIG10 = ValidationConfig(jamming=Jamming.BASIC, link=ReceiverLink(p_t=10.0, p_j=1.0))


def run_validation(config: ValidationConfig) -> ValidationCurve:
    """Monte-Carlo mean vs approximations for every receive-antenna count in the config."""
    if Dimension(config.dimension) is not Dimension.CIRCULAR_2D:
        raise ConfigError("Monte-Carlo validation supports 2D circular apertures only; 3D geometries are not built")
    if not config.n_values:
        raise ConfigError("n_values must be nonempty")
    points = []
    for n in sorted(set(int(v) for v in config.n_values)):
        geom = build_geometry(config.layout, n, config.radius_wavelengths)
        ens = ChannelEnsemble(geom, config.n_t, config.n_j, config.realizations, config.seed)
        if config.jamming is Jamming.NONE:
            points.append(true_capacity_unjammed(ens, config.link))
        elif config.jamming is Jamming.BASIC:
            points.append(true_capacity_basic_jammed(ens, config.link))
        else:
            points.append(true_capacity_an_jammed(ens, config.n_b, config.link))
    return ValidationCurve(config.tag, tuple(points))
