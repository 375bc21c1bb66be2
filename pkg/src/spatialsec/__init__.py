"""Secrecy capacity of multi-antenna wiretap and friendly-jamming systems whose
receivers place antennas inside a bounded aperture."""

from .closed_form import (
    capacity_jammed,
    capacity_limit_infinite_bob,
    capacity_limit_infinite_eve,
    capacity_unjammed,
    secrecy_capacity,
)
from .model import (
    INFINITE,
    CapacityResult,
    ConfigError,
    Dimension,
    DivergenceError,
    DomainError,
    LinkGains,
    NumericalError,
    PowerNoiseConfig,
    SecrecyError,
    SpatialConstraint,
    SystemKind,
    SystemParams,
    WorstCaseRequired,
    db_to_linear,
    linear_to_db,
    saturation_number,
)
from .worst_case import (
    clip_jamming_power,
    grid_search_jamming,
    min_bob_antennas,
    optimal_jamming_power,
    worst_case_secrecy,
    zero_capacity_condition,
)

__version__ = "0.1.0"
