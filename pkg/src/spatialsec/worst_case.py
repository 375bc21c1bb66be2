"""Worst-case secrecy capacity against an eavesdropper with unlimited antennas.

The worst-case eavesdropper has N_e -> infinity and sigma2_e -> 0 (taken
jointly). Its capacity is then the saturated jammed limit
``Nsat_e * log2(1 + alpha_e*P_t / (beta_e*P_j))``, finite only with a jammer.

Functions here take :class:`~spatialsec.model.SystemParams` already in
worst-case form (see :meth:`SystemParams.worst_case`). Finite Eve parameters
are rejected so they are never silently ignored.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .closed_form import capacity_jammed, capacity_unjammed
from .model import ConfigError, DivergenceError, DomainError, SystemKind, SystemParams

#: Relative size under which a root-formula denominator counts as zero.
DEGENERATE_RTOL = 1e-12

GRID_PJ_MIN = 1e-3
GRID_PJ_MAX = 1e3
GRID_POINTS = 2000


class Binding(enum.Enum):
    """Which branch of the minimum-antenna formula applies.

    ``SATURATED_BOB_SUFFICIENT``: Bob reaches a positive worst-case capacity
    with at most Nsat_b antennas. ``UNSATURATED_BOB_SUFFICIENT``: he needs more
    than Nsat_b, in the logarithmic-growth regime.
    """

    SATURATED_BOB_SUFFICIENT = "saturated"
    UNSATURATED_BOB_SUFFICIENT = "unsaturated"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    n_b_min: int | None
    binding_condition: Binding
    degenerate: bool = False


@dataclass(frozen=True)
class RootCandidate:
    name: str
    value: complex | float
    objective: float | None
    branch: str
    admissible: bool


@dataclass(frozen=True)
class JammingOptimum:
    """Outcome of the closed-form jamming-power optimisation.

    ``selected_pj`` is ``None`` when no stationary point is real, positive and
    yields a positive worst-case capacity (the worst case is then zero for every
    jamming power).
    """

    candidates: tuple[RootCandidate, ...]
    selected_pj: float | None
    achieved_cs: float
    method: str = "closed_form"
    diagnostic: str = ""

    @property
    def applicable(self) -> bool:
        return self.selected_pj is not None


@dataclass(frozen=True)
class GridSearchResult:
    pj_star: float
    cs_star: float
    degenerate: bool


def _require_worst_case(params: SystemParams):
    if not (params.n_e == math.inf and params.power.sigma2_e == 0.0):
        raise ConfigError(
            "worst-case analysis eliminates N_e and sigma2_e; pass params.worst_case() "
            f"(got n_e={params.n_e!r}, sigma2_e={params.power.sigma2_e!r})"
        )


def _require_jamming(p_j):
    if not p_j > 0:
        raise DivergenceError("worst-case Eve capacity is infinite without jamming (P_j = 0)")


def eve_worst_case_capacity(params: SystemParams, p_j=None):
    """Eve's capacity with N_e -> infinity and sigma2_e -> 0."""
    g, p = params.gains, params.power
    p_j = p.p_j if p_j is None else p_j
    _require_jamming(p_j)
    return params.nsat_e * math.log2(1.0 + g.alpha_e * p.p_t / (g.beta_e * p_j))


def _objective(kind, params: SystemParams, n_b, p_j):
    """Unclamped worst-case objective ``C_b - C_e``; vectorised over ``p_j``."""
    g, p = params.gains, params.power
    nsb, nse = params.nsat_b, params.nsat_e
    p_j = np.asarray(p_j, dtype=float)
    eve = nse * np.log2(1.0 + g.alpha_e * p.p_t / (g.beta_e * p_j))
    a = g.alpha_b * p.p_t
    s = p.sigma2_b
    if kind is SystemKind.BASIC_JAMMER:
        b = g.beta_b * p_j
        if n_b <= nsb:
            bob = n_b * np.log2(1.0 + a / (b + s))
        else:
            u = n_b / nsb
            bob = nsb * np.log2(1.0 + u * a / (u * b + s))
    else:
        bob = capacity_unjammed(n_b, nsb, a, s)
    return bob - eve


def worst_case_secrecy(params: SystemParams) -> float:
    """Worst-case secrecy capacity for the system kind in ``params``."""
    _require_worst_case(params)
    if params.kind is SystemKind.WIRETAP:
        # Eve's capacity is unbounded without a jammer.
        return 0.0
    g, p = params.gains, params.power
    _require_jamming(p.p_j)
    eve = eve_worst_case_capacity(params)
    if params.kind is SystemKind.BASIC_JAMMER:
        bob = capacity_jammed(params.n_b, params.nsat_b, g.alpha_b * p.p_t, g.beta_b * p.p_j, p.sigma2_b)
    else:
        bob = capacity_unjammed(params.n_b, params.nsat_b, g.alpha_b * p.p_t, p.sigma2_b)
    return max(bob - eve, 0.0)


def worst_case_curve(params: SystemParams, p_j_values) -> np.ndarray:
    """Worst-case secrecy capacity over an array of jamming powers."""
    _require_worst_case(params)
    p_j_values = np.asarray(p_j_values, dtype=float)
    if params.kind is SystemKind.WIRETAP:
        return np.zeros_like(p_j_values)
    if np.any(~(p_j_values > 0)):
        raise DivergenceError("every jamming power in the sweep must be positive")
    if params.kind is SystemKind.AN_JAMMER and not params.power.sigma2_b > 0:
        raise DomainError("AN jamming leaves Bob interference-free; sigma2_b must be positive")
    return np.maximum(_objective(params.kind, params, params.n_b, p_j_values), 0.0)


def zero_capacity_condition(params: SystemParams) -> bool:
    """True when basic jamming cannot give a positive worst case for any N_b.

    Bob's capacity as N_b -> infinity is compared with Eve's worst-case
    capacity; Bob's finite-N_b capacity is always strictly below his limit.
    """
    if params.kind is not SystemKind.BASIC_JAMMER:
        raise ConfigError("zero_capacity_condition applies to the basic jammer-assisted system only")
    g, p = params.gains, params.power
    _require_jamming(p.p_j)
    bob_limit = params.nsat_b * math.log2(1.0 + g.alpha_b * p.p_t / (g.beta_b * p.p_j))
    return bob_limit <= eve_worst_case_capacity(params)


def min_bob_antennas(params: SystemParams) -> FeasibilityReport:
    """Smallest N_b giving a positive worst-case secrecy capacity.

    The ``n_b`` field of ``params`` is ignored. Infeasibility is reported, not
    raised.
    """
    _require_worst_case(params)
    infeasible = FeasibilityReport(False, None, Binding.INFEASIBLE)
    if params.kind is SystemKind.WIRETAP:
        return infeasible
    g, p = params.gains, params.power
    _require_jamming(p.p_j)
    nsb, nse = params.nsat_b, params.nsat_e
    eve = eve_worst_case_capacity(params)
    if eve == 0.0:
        # Nothing to protect against (P_t = 0); the worst case is 0 for every N_b.
        return FeasibilityReport(True, 1, Binding.SATURATED_BOB_SUFFICIENT, degenerate=True)

    a = g.alpha_b * p.p_t
    s = p.sigma2_b
    growth = 1.0 + g.alpha_e * p.p_t / (g.beta_e * p.p_j)
    t = growth ** (nse / nsb)
    if params.kind is SystemKind.BASIC_JAMMER:
        if zero_capacity_condition(params):
            return infeasible
        b = g.beta_b * p.p_j
        per_antenna = math.log2(1.0 + a / (b + s))
        if nsb * per_antenna >= eve:
            return FeasibilityReport(True, math.floor(eve / per_antenna) + 1, Binding.SATURATED_BOB_SUFFICIENT)
        n = math.floor(nsb * s * (t - 1.0) / (a + b - b * t)) + 1
        return FeasibilityReport(True, n, Binding.UNSATURATED_BOB_SUFFICIENT)

    if not s > 0:
        raise DomainError("AN jamming leaves Bob interference-free; sigma2_b must be positive")
    per_antenna = math.log2(1.0 + a / s)
    if nsb * per_antenna >= eve:
        return FeasibilityReport(True, math.floor(eve / per_antenna) + 1, Binding.SATURATED_BOB_SUFFICIENT)
    n = math.floor(nsb * s * (t - 1.0) / a) + 1
    return FeasibilityReport(True, n, Binding.UNSATURATED_BOB_SUFFICIENT)


def stationary_points(params: SystemParams):
    """The two closed-form stationary points of the basic-jammer objective.

    Returns ``(plus_root, minus_root, branch, denominator, scale)``. The roots
    are complex when the discriminant is negative. For N_b <= Nsat_b they are
    the roots named x1, x2 (objective f1); otherwise x3, x4 (objective f2).
    """
    g, p = params.gains, params.power
    ab, ae, bb, be = g.alpha_b, g.alpha_e, g.beta_b, g.beta_e
    pt, s = p.p_t, p.sigma2_b
    nb, nsb, nse = params.n_b, params.nsat_b, params.nsat_e
    if nb <= nsb:
        branch = "f1"
        denom = nb * ab * be - nse * ae * bb
        scale = max(nb * ab * be, nse * ae * bb)
        phi = 4 * nb * nse * ab * ae * bb * s * (pt * ab * be - pt * ae * bb + be * s)
        centre = (2 * nse * ae * s - pt * ab * ae * (nb - nse)) / (2 * denom) if denom else math.nan
        disc = ab**2 * ae**2 * bb**2 * pt**2 * (nb - nse) ** 2 + phi
        half_width_den = 2 * bb * denom
    else:
        branch = "f2"
        denom = nsb * ab * be - nse * ae * bb
        scale = max(nsb * ab * be, nse * ae * bb)
        phi = 4 * nsb**2 * nse * ab * ae * bb * s * (nb * pt * ab * be - nb * pt * ae * bb + nsb * be * s)
        centre = (
            (2 * nse * nsb * ae * s - nb * pt * ab * ae * (nsb - nse)) / (2 * nb * denom) if denom else math.nan
        )
        disc = ab**2 * ae**2 * bb**2 * pt**2 * nb**2 * (nsb - nse) ** 2 + phi
        half_width_den = 2 * nb * bb * denom
    if denom == 0:
        return math.nan, math.nan, branch, denom, scale
    root = math.sqrt(disc) if disc >= 0 else cmath.sqrt(disc)
    half_width = root / half_width_den
    return centre + half_width, centre - half_width, branch, denom, scale


def optimal_jamming_power(params: SystemParams) -> JammingOptimum:
    """Jamming power maximising the basic jammer's worst-case secrecy capacity.

    The objective tends to -infinity as P_j -> 0 and to 0 as P_j -> infinity,
    so a positive maximum, if any, sits at a stationary point. Both closed-form
    roots of the active branch are evaluated; real positive roots with positive
    objective are admissible and the best one is selected (smaller power on a
    tie). A vanishing root denominator falls back to :func:`grid_search_jamming`.
    """
    if params.kind is not SystemKind.BASIC_JAMMER:
        raise ConfigError("optimal jamming power applies to the basic jammer-assisted system only")
    _require_worst_case(params)
    if not params.power.sigma2_b > 0:
        raise DomainError("sigma2_b must be positive for the stationary-point solution")

    plus, minus, branch, denom, scale = stationary_points(params)
    names = ("x1", "x2") if branch == "f1" else ("x3", "x4")
    if abs(denom) <= DEGENERATE_RTOL * scale:
        grid = grid_search_jamming(params)
        cands = tuple(RootCandidate(n, math.nan, None, branch, False) for n in names)
        return JammingOptimum(
            cands,
            None if grid.degenerate else grid.pj_star,
            grid.cs_star,
            method="grid",
            diagnostic="root denominator vanishes; optimum taken from grid search",
        )

    cands = []
    for name, x in zip(names, (plus, minus)):
        if isinstance(x, complex) or not x > 0:
            cands.append(RootCandidate(name, x, None, branch, False))
            continue
        obj = float(_objective(SystemKind.BASIC_JAMMER, params, params.n_b, x))
        cands.append(RootCandidate(name, x, obj, branch, obj > 0))

    admissible = [c for c in cands if c.admissible]
    if not admissible:
        return JammingOptimum(tuple(cands), None, 0.0, diagnostic="no real positive root with positive objective")
    best = max(admissible, key=lambda c: (c.objective, -c.value))
    return JammingOptimum(tuple(cands), float(best.value), float(best.objective))


def grid_search_jamming(params: SystemParams, pj_min=GRID_PJ_MIN, pj_max=GRID_PJ_MAX, points=GRID_POINTS):
    """Brute-force argmax of the worst-case secrecy capacity over a log grid of P_j."""
    if not (0 < pj_min < pj_max) or not math.isfinite(pj_max):
        raise ConfigError(f"need 0 < pj_min < pj_max, got {pj_min!r}, {pj_max!r}")
    if int(points) < 2:
        raise ConfigError(f"need at least 2 grid points, got {points!r}")
    grid = np.logspace(math.log10(pj_min), math.log10(pj_max), int(points))
    values = worst_case_curve(params, grid)
    k = int(np.argmax(values))
    cs = float(values[k])
    return GridSearchResult(float(grid[k]), cs, degenerate=cs == 0.0)


def clip_jamming_power(optimum: JammingOptimum, pj_max: float) -> float | None:
    """Jamming power under a peak constraint: ``min(P_j_opt, pj_max)``, or None if not applicable."""
    if optimum.selected_pj is None:
        return None
    return min(optimum.selected_pj, pj_max)
