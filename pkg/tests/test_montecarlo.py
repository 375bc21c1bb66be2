import math

import numpy as np
import pytest

from spatialsec import ConfigError, Dimension, capacity_jammed
from spatialsec.montecarlo import (
    FIG10,
    FIG9,
    ChannelEnsemble,
    Jamming,
    Layout,
    ReceiverLink,
    ValidationConfig,
    an_equivalent_channel,
    build_geometry,
    correlation_matrix,
    jammed_split_approximation,
    run_validation,
    true_capacity_an_jammed,
    true_capacity_basic_jammed,
    true_capacity_unjammed,
)
from spatialsec.numerics import jammed_logdet_capacity, logdet_capacity, sample_correlated_gaussian

# First zero of J_0(2*pi*d), as a distance in wavelengths (mpmath).
J0_ZERO_DISTANCE = 0.38273987478100617842
# E[log2(1 + 10 X)] for X ~ Exp(1), by 40-digit quadrature.
SCALAR_RAYLEIGH_MEAN = 2.9065148084148049847


def test_uca_positions():
    g = build_geometry("uca", 4, 1.0)
    assert np.allclose(g.positions, [[1, 0], [0, 1], [-1, 0], [0, -1]], atol=1e-15)


def test_ula_positions():
    assert np.array_equal(build_geometry("ula", 2, 1.0).positions, [[-1.0, 0.0], [1.0, 0.0]])
    assert np.array_equal(build_geometry("ula", 1, 1.0).positions, [[0.0, 0.0]])


def test_uca_single_point():
    assert np.array_equal(build_geometry("uca", 1, 2.0).positions, [[2.0, 0.0]])


@pytest.mark.parametrize("layout", ["uca", "ula"])
def test_positions_inside_aperture(layout):
    for n in (1, 2, 7, 50):
        g = build_geometry(layout, n, 1.3)
        assert np.all(np.linalg.norm(g.positions, axis=1) <= 1.3 + 1e-12)


def test_bad_geometry():
    with pytest.raises(ConfigError):
        build_geometry("uca", 0, 1.0)
    with pytest.raises(ConfigError):
        build_geometry("ula", 3, 0.0)


def test_correlation_unit_diagonal_and_first_zero():
    g = build_geometry("ula", 2, J0_ZERO_DISTANCE / 2)
    r = correlation_matrix(g)
    assert np.array_equal(np.diag(r), [1.0, 1.0])
    assert abs(r[0, 1]) <= 1e-10


def test_correlation_grows_with_count():
    # ULA: the mean absolute correlation over all pairs rises with the count.
    means = []
    for n in (2, 3, 5, 10, 20, 40, 80, 100):
        r = correlation_matrix(build_geometry("ula", n, 1.0))
        means.append(np.abs(r[~np.eye(n, dtype=bool)]).mean())
    assert np.all(np.diff(means) > 0)
    # UCA: J_0 oscillates with distance, so neighbour correlation only rises
    # monotonically once the spacing is inside the first zero.
    neighbours, gaps = [], []
    for n in (20, 30, 40, 60, 80, 100):
        g = build_geometry("uca", n, 1.0)
        neighbours.append(correlation_matrix(g)[0, 1])
        gaps.append(np.linalg.norm(g.positions[0] - g.positions[1]))
    assert gaps[0] < J0_ZERO_DISTANCE
    assert np.all(np.diff(gaps) < 0) and np.all(np.diff(neighbours) > 0)


def test_unknown_correlation_model():
    with pytest.raises(ConfigError):
        correlation_matrix(build_geometry("uca", 3, 1.0), model="laplacian")


def test_scalar_rayleigh_matches_quadrature():
    ens = ChannelEnsemble(build_geometry("uca", 1, 1.0), n_t=1, realizations=4000, seed=3)
    pt = true_capacity_unjammed(ens, ReceiverLink(p_t=10.0))
    assert abs(pt.mc_mean - SCALAR_RAYLEIGH_MEAN) <= 2 * pt.mc_stderr


def test_identity_correlation_limit():
    ens = ChannelEnsemble(build_geometry("uca", 4, 1.0), n_t=4000, realizations=20, receiver_correlation=np.eye(4))
    pt = true_capacity_unjammed(ens, ReceiverLink(p_t=10.0))
    assert pt.approx_corr == pytest.approx(4 * math.log2(11), rel=1e-14)
    assert pt.mc_mean == pytest.approx(4 * math.log2(11), rel=5e-3)


def test_zero_jamming_reproduces_unjammed_exactly():
    ens = ChannelEnsemble(build_geometry("ula", 6, 1.0), realizations=15, seed=9)
    a = true_capacity_unjammed(ens, ReceiverLink(p_t=10.0))
    b = true_capacity_basic_jammed(ens, ReceiverLink(p_t=10.0, p_j=0.0))
    assert np.array_equal(a.samples, b.samples)


def test_validation_is_deterministic():
    cfg = ValidationConfig(jamming=Jamming.BASIC, n_values=(1, 4, 9), realizations=10, seed=5,
                           link=ReceiverLink(p_t=10.0, p_j=1.0))
    a, b = run_validation(cfg), run_validation(cfg)
    for p, q in zip(a.points, b.points):
        assert p.samples.tobytes() == q.samples.tobytes()
    assert [p.n_receive for p in a.points] == [1, 4, 9]


def test_sample_covariance_approaches_correlation():
    r = correlation_matrix(build_geometry("uca", 10, 1.0))
    errs = []
    for n_t in (10**2, 10**3, 10**4):
        h = sample_correlated_gaussian(r, n_t, seed=4)
        errs.append(np.linalg.norm(h @ h.conj().T / n_t - r) / np.linalg.norm(r))
    assert errs[0] > errs[1] > errs[2]


@pytest.mark.parametrize("layout", ["uca", "ula"])
def test_approximation_chain(layout):
    link = ReceiverLink(p_t=10.0, p_j=1.0)
    for n in (1, 5, 10, 40, 100):
        r = correlation_matrix(build_geometry(layout, n, 1.0))
        ens = ChannelEnsemble(build_geometry(layout, n, 1.0), realizations=1)
        assert true_capacity_unjammed(ens, link).approx_corr == logdet_capacity(10.0 * r)
        single = jammed_logdet_capacity(10.0 * r, 1.0 * r, 1.0)
        split = jammed_split_approximation(r, link)
        assert abs(single - split) <= 1e-9 * abs(single)


def test_scalar_jammed_limit():
    ens = ChannelEnsemble(build_geometry("uca", 1, 1.0), n_t=3000, n_j=3000, realizations=30, seed=1)
    pt = true_capacity_basic_jammed(ens, ReceiverLink(p_t=10.0, p_j=1.0))
    assert pt.mc_mean == pytest.approx(math.log2(1 + 10.0 / 2.0), rel=5e-3)


def test_an_keeps_bob_clean_and_has_independent_columns():
    ens = ChannelEnsemble(build_geometry("uca", 3, 1.0), n_j=9, realizations=1, seed=2)
    rng = np.random.default_rng(0)
    for k in range(50):
        g_bob, z, kk = an_equivalent_channel(ens, 4, k)
        v = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        assert np.linalg.norm(g_bob @ z @ v) <= 1e-10 * np.linalg.norm(v)
        assert np.abs(z.conj().T @ z - np.eye(5)).max() <= 1e-12
        assert kk.shape == (3, 5)


def test_an_requires_spare_jammer_antennas():
    ens = ChannelEnsemble(build_geometry("uca", 3, 1.0), n_j=4, realizations=2)
    with pytest.raises(ConfigError):
        true_capacity_an_jammed(ens, 4, ReceiverLink(p_t=10.0, p_j=1.0))


def test_an_single_antenna_eve_matches_closed_form():
    ens = ChannelEnsemble(build_geometry("uca", 1, 1.0), n_t=1000, n_j=1000, realizations=40, seed=6)
    link = ReceiverLink(p_t=10.0, p_j=1.0)
    pt = true_capacity_an_jammed(ens, 8, link)
    closed = capacity_jammed(1, 19, 10.0, 1.0, 1.0)
    assert pt.approx_piecewise == closed
    assert abs(pt.mc_mean - closed) <= max(4 * pt.mc_stderr, 5e-3 * closed)


def test_an_with_bob_correlation():
    ens = ChannelEnsemble(build_geometry("uca", 2, 1.0), n_j=12, realizations=5, seed=1)
    bob_r = correlation_matrix(build_geometry("ula", 3, 0.5))
    pt = true_capacity_an_jammed(ens, 3, ReceiverLink(p_t=10.0, p_j=1.0), bob_correlation=bob_r)
    assert np.all(np.isfinite(pt.samples)) and pt.samples.size == 5


def test_single_realization_is_flagged():
    cfg = ValidationConfig(n_values=(7,), realizations=1)
    curve = run_validation(cfg)
    assert len(curve.points) == 1
    pt = curve.points[0]
    assert pt.mc_stderr == 0.0 and pt.single_realization


def test_config_errors():
    with pytest.raises(ConfigError):
        run_validation(ValidationConfig(dimension=Dimension.SPHERICAL_3D))
    with pytest.raises(ConfigError):
        run_validation(ValidationConfig(n_values=()))
    with pytest.raises(ConfigError):
        ReceiverLink(sigma2=0.0)
    with pytest.raises(ConfigError):
        ChannelEnsemble(build_geometry("uca", 2, 1.0), n_t=0)


def test_presets():
    assert FIG9.jamming is Jamming.NONE and FIG9.link.p_t == 10.0 and FIG9.n_t == 100
    assert FIG10.jamming is Jamming.BASIC and FIG10.link.p_j == 1.0 and FIG10.n_j == 100
    assert FIG9.tag == "none-uca"
    assert ValidationConfig(layout=Layout.UNIFORM_LINEAR).tag == "none-ula"
