from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spatialsec import (
    ConfigError,
    DivergenceError,
    DomainError,
    WorstCaseRequired,
    capacity_jammed,
    capacity_limit_infinite_bob,
    capacity_limit_infinite_eve,
    capacity_unjammed,
    secrecy_capacity,
)
from scenarios import make_params, random_params

# Reference values computed with mpmath at 40 digits.
LOG2_101 = 6.658211482751794737
JAMMED_30_27 = 155.11529221350016493
FIG4_CB = 157.79543824929807902
FIG4_CE = 5.6724253419714955897
FIG4_CS = 152.12301290732658343
LIMIT_27 = 179.77171003429845790

counts = st.integers(min_value=1, max_value=500)
sats = st.integers(min_value=3, max_value=200)
powers = st.floats(min_value=0.0, max_value=1e4)
noises = st.floats(min_value=1e-3, max_value=1e3)


def test_unjammed_examples():
    assert capacity_unjammed(1, 27, 100, 1) == pytest.approx(LOG2_101, rel=1e-15)
    assert capacity_unjammed(27, 27, 100, 1) == capacity_unjammed(27, 27, 100, 1, branch="saturated")
    assert capacity_unjammed(40, 27, 0.0, 1) == 0.0


def test_jammed_examples():
    assert capacity_jammed(30, 27, 100, 1, 1) == pytest.approx(JAMMED_30_27, rel=1e-14)
    for n in (1, 27, 60):
        assert capacity_jammed(n, 27, 100, 0.0, 1) == capacity_unjammed(n, 27, 100, 1)


def test_domain_errors():
    with pytest.raises(DomainError):
        capacity_unjammed(3, 27, 1, 0)
    with pytest.raises(DomainError):
        capacity_jammed(3, 27, 1, 0, 0)
    with pytest.raises(DomainError):
        capacity_unjammed(0, 27, 1, 1)
    with pytest.raises(ValueError):
        capacity_unjammed(3, 27, 1, 1, branch="middle")


def test_fig4_basic_point():
    res = secrecy_capacity(make_params("basic", nb=35, ne=1))
    assert res.c_b == pytest.approx(FIG4_CB, rel=1e-14)
    assert res.c_e == pytest.approx(FIG4_CE, rel=1e-14)
    assert res.c_s == pytest.approx(FIG4_CS, rel=1e-14)


def test_symmetric_wiretap_is_zero():
    res = secrecy_capacity(make_params("wiretap", rb=1.0, re=1.0, nb=12, ne=12))
    assert res.c_s == 0.0


def test_worst_case_params_redirected():
    with pytest.raises(WorstCaseRequired, match="worst_case"):
        secrecy_capacity(make_params(ne=5).worst_case())
    with pytest.raises(WorstCaseRequired):
        secrecy_capacity(make_params(sigma2_e=0.0))


@given(counts, sats, powers, powers, noises)
def test_branch_continuity(n, n_sat, signal, interference, noise):
    n = n_sat
    assert capacity_unjammed(n, n_sat, signal, noise, branch="linear") == capacity_unjammed(
        n, n_sat, signal, noise, branch="saturated"
    )
    assert capacity_jammed(n, n_sat, signal, interference, noise, branch="linear") == capacity_jammed(
        n, n_sat, signal, interference, noise, branch="saturated"
    )


@given(sats, powers, powers, noises)
def test_capacity_nondecreasing_in_n(n_sat, signal, interference, noise):
    vals = [capacity_jammed(n, n_sat, signal, interference, noise) for n in range(1, 3 * n_sat)]
    assert np.all(np.diff(vals) >= -1e-12 * max(vals[-1], 1.0))


def make_like(p, **changes):
    return replace(p, **changes)


def test_secrecy_monotone_in_antenna_counts():
    rng = np.random.default_rng(11)
    for _ in range(50):
        base = random_params(rng, kind=str(rng.choice(["wiretap", "basic", "an"])))
        cs_b = [secrecy_capacity(make_like(base, n_b=n)).c_s for n in range(1, 80)]
        cs_e = [secrecy_capacity(make_like(base, n_e=n)).c_s for n in range(1, 80)]
        assert np.all(np.diff(cs_b) >= -1e-9)
        assert np.all(np.diff(cs_e) <= 1e-9)


def test_clamp_and_dominance_random():
    rng = np.random.default_rng(5)
    for _ in range(300):
        p = random_params(rng)
        wt, basic, an = (secrecy_capacity(p.with_kind(k)) for k in ("wiretap", "basic", "an"))
        for r in (wt, basic, an):
            assert r.c_s >= 0.0
            if r.c_b <= r.c_e:
                assert r.c_s == 0.0
        assert basic.c_e == an.c_e
        assert an.c_b == wt.c_b >= basic.c_b
        assert an.c_s >= wt.c_s and an.c_s >= basic.c_s


def test_bob_capacity_strictly_below_limit():
    rng = np.random.default_rng(6)
    for _ in range(200):
        p = random_params(rng)
        limit = capacity_limit_infinite_bob(p)
        assert secrecy_capacity(p).c_b < limit


def test_limit_examples():
    p = make_params("basic", rb=1.5)
    assert capacity_limit_infinite_bob(p) == pytest.approx(LIMIT_27, rel=1e-15)
    assert capacity_limit_infinite_eve(p) == pytest.approx(19 * LOG2_101, rel=1e-15)
    zero_pt = make_params("basic").with_power(p_t=0.0)
    assert capacity_limit_infinite_bob(zero_pt) == 0.0


def test_limit_at_million_antennas():
    p = make_params("basic")
    big = capacity_jammed(10**6, 27, 100, 1, 1)
    assert abs(big - capacity_limit_infinite_bob(p)) <= 1e-3 * capacity_limit_infinite_bob(p)


def test_limit_errors():
    with pytest.raises(DivergenceError):
        capacity_limit_infinite_bob(make_params("basic").with_power(p_j=0.0))
    with pytest.raises(DivergenceError):
        capacity_limit_infinite_eve(make_params("an").with_power(p_j=0.0))
    with pytest.raises(ConfigError):
        capacity_limit_infinite_bob(make_params("an"))
    with pytest.raises(ConfigError):
        capacity_limit_infinite_eve(make_params("wiretap"))


def test_wiretap_ignores_jamming_power():
    p = make_params("wiretap", nb=40, ne=7)
    assert secrecy_capacity(p) == secrecy_capacity(p.with_power(p_j=123.0))
