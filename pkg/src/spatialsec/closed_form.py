"""Piecewise closed-form capacities for spatially-constrained receivers.

A receiver with ``n`` antennas in an aperture of saturation number ``n_sat``
gains capacity linearly in ``n`` up to ``n_sat`` and logarithmically after.
All logarithms are base two, so capacities are in bits/s/Hz.
"""

from __future__ import annotations

import math

from .model import (
    CapacityResult,
    ConfigError,
    DivergenceError,
    DomainError,
    SystemKind,
    SystemParams,
    WorstCaseRequired,
)


def _use_linear_branch(n, n_sat, branch):
    if branch is None:
        return n <= n_sat
    if branch not in ("linear", "saturated"):
        raise ValueError(f"branch must be 'linear' or 'saturated', got {branch!r}")
    return branch == "linear"


def _check_counts(n, n_sat):
    if n < 1:
        raise DomainError(f"antenna count must be >= 1, got {n!r}")
    if n_sat < 1:
        raise DomainError(f"saturation number must be >= 1, got {n_sat!r}")


def capacity_unjammed(n, n_sat, signal, noise, *, branch=None):
    """Capacity of an unjammed spatially-constrained receiver.

    Parameters
    ----------
    n : int
        Receive antenna count.
    n_sat : int
        Saturation number of the receiver's aperture.
    signal : float
        Received signal power term, ``alpha * P_t``.
    noise : float
        Noise variance; must be positive.
    branch : {None, "linear", "saturated"}
        Force one piece of the formula instead of selecting by ``n <= n_sat``.
    """
    _check_counts(n, n_sat)
    if not noise > 0:
        raise DomainError("noise variance must be positive; use the worst-case module for sigma2 -> 0")
    if signal < 0:
        raise DomainError(f"signal power must be nonnegative, got {signal!r}")
    snr = signal / noise
    if _use_linear_branch(n, n_sat, branch):
        return n * math.log2(1.0 + snr)
    return n_sat * math.log2(1.0 + (n / n_sat) * snr)


def capacity_jammed(n, n_sat, signal, interference, noise, *, branch=None):
    """Capacity of a receiver hit by basic (non-nulled) jamming.

    ``interference`` is ``beta * P_j``. With ``interference == 0`` this equals
    :func:`capacity_unjammed`.
    """
    _check_counts(n, n_sat)
    if signal < 0 or interference < 0 or noise < 0:
        raise DomainError("signal, interference and noise must be nonnegative")
    if not interference + noise > 0:
        raise DomainError("interference + noise must be positive")
    if _use_linear_branch(n, n_sat, branch):
        return n * math.log2(1.0 + signal / (interference + noise))
    ratio = n / n_sat
    return n_sat * math.log2(1.0 + ratio * signal / (ratio * interference + noise))


def bob_capacity(params: SystemParams) -> float:
    g, p = params.gains, params.power
    signal = g.alpha_b * p.p_t
    if params.kind is SystemKind.BASIC_JAMMER:
        return capacity_jammed(params.n_b, params.nsat_b, signal, g.beta_b * p.p_j, p.sigma2_b)
    # AN jamming lies in the null space of Bob's channel: Bob sees no interference.
    return capacity_unjammed(params.n_b, params.nsat_b, signal, p.sigma2_b)


def eve_capacity(params: SystemParams) -> float:
    if params.is_worst_case:
        raise WorstCaseRequired(
            "N_e = INFINITE or sigma2_e = 0 describes the worst-case eavesdropper; "
            "use spatialsec.worst_case.worst_case_secrecy"
        )
    g, p = params.gains, params.power
    signal = g.alpha_e * p.p_t
    if params.kind is SystemKind.WIRETAP:
        return capacity_unjammed(params.n_e, params.nsat_e, signal, p.sigma2_e)
    return capacity_jammed(params.n_e, params.nsat_e, signal, g.beta_e * p.p_j, p.sigma2_e)


def secrecy_capacity(params: SystemParams) -> CapacityResult:
    """Bob, Eve and secrecy capacity ``[C_b - C_e]^+`` for a finite eavesdropper."""
    c_e = eve_capacity(params)
    return CapacityResult(c_b=bob_capacity(params), c_e=c_e)


def _saturated_jammed_limit(n_sat, signal, interference):
    if interference == 0:
        raise DivergenceError("infinite-antenna limit diverges without jamming (P_j = 0)")
    return n_sat * math.log2(1.0 + signal / interference)


def capacity_limit_infinite_bob(params: SystemParams) -> float:
    """Limit of Bob's basic-jammed capacity as N_b -> infinity."""
    if params.kind is not SystemKind.BASIC_JAMMER:
        raise ConfigError("Bob's capacity only saturates to a finite limit under basic jamming")
    g, p = params.gains, params.power
    return _saturated_jammed_limit(params.nsat_b, g.alpha_b * p.p_t, g.beta_b * p.p_j)


def capacity_limit_infinite_eve(params: SystemParams) -> float:
    """Limit of Eve's jammed capacity as N_e -> infinity (basic or AN jamming).

    This is also Eve's capacity for the worst-case eavesdropper, since the
    limit does not depend on sigma2_e.
    """
    if params.kind is SystemKind.WIRETAP:
        raise ConfigError("Eve's capacity has no finite N_e -> infinity limit without a jammer")
    g, p = params.gains, params.power
    return _saturated_jammed_limit(params.nsat_e, g.alpha_e * p.p_t, g.beta_e * p.p_j)
