import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spatialsec import (
    INFINITE,
    CapacityResult,
    ConfigError,
    Dimension,
    DomainError,
    SpatialConstraint,
    db_to_linear,
    linear_to_db,
    saturation_number,
)
from scenarios import make_params

radii = st.floats(min_value=1e-3, max_value=50.0, allow_nan=False)


@pytest.mark.parametrize(
    "radius, dim, expected",
    [(1.5, "2d", 27), (1.0, "2d", 19), (2.0, "2d", 37), (1.0, "3d", 100)],
)
def test_saturation_examples(radius, dim, expected):
    assert saturation_number(SpatialConstraint(radius, Dimension(dim))) == expected


def test_saturation_property_on_constraint():
    assert SpatialConstraint(1.5).saturation == 27


@given(radii, radii)
def test_saturation_monotone_in_radius(r1, r2):
    lo, hi = sorted((r1, r2))
    for dim in Dimension:
        assert saturation_number(SpatialConstraint(lo, dim)) <= saturation_number(SpatialConstraint(hi, dim))


@given(radii)
def test_saturation_2d_is_odd_and_at_least_three(r):
    n = saturation_number(SpatialConstraint(r))
    assert n % 2 == 1 and n >= 3


def test_saturation_steps_exactly_where_ceiling_steps():
    # pi*e*r crosses 9 between these radii.
    edge = 9 / (math.pi * math.e)
    assert saturation_number(SpatialConstraint(edge * (1 - 1e-9))) == 19
    assert saturation_number(SpatialConstraint(edge * (1 + 1e-9))) == 21


@pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
def test_constraint_rejects_bad_radius(bad):
    with pytest.raises(ConfigError):
        SpatialConstraint(bad)


def test_db_examples():
    assert db_to_linear(20) == pytest.approx(100, rel=1e-15)
    assert db_to_linear(0) == 1.0
    assert abs(linear_to_db(db_to_linear(3.43)) - 3.43) <= 1e-12 * 3.43


@given(st.floats(min_value=-100, max_value=100))
def test_db_round_trip(x):
    assert abs(linear_to_db(db_to_linear(x)) - x) <= 1e-12 * max(abs(x), 1.0)


@pytest.mark.parametrize("bad", [0.0, -1.0])
def test_linear_to_db_domain(bad):
    with pytest.raises(DomainError):
        linear_to_db(bad)


def test_capacity_result_clamp():
    assert CapacityResult(5.0, 7.0).c_s == 0.0
    assert CapacityResult(7.0, 5.0).c_s == 2.0


def test_system_params_validation():
    with pytest.raises(ConfigError):
        make_params(nb=0)
    with pytest.raises(ConfigError):
        make_params(ne=2.5)
    with pytest.raises(ConfigError):
        make_params(gains=(1, 0, 1, 1))
    with pytest.raises(ConfigError):
        make_params(sigma2_b=-1)
    assert make_params(ne=INFINITE).is_worst_case


def test_worst_case_copy():
    p = make_params(ne=5).worst_case()
    assert p.n_e == INFINITE and p.power.sigma2_e == 0.0
    assert p.n_b == 30 and p.power.p_t == pytest.approx(100)
