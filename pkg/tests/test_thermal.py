import math
from types import SimpleNamespace

import numpy as np
import pytest
from scipy import integrate

from oscnet import (
    GROUND_STATE,
    PhysicalError,
    ThermalEnvironment,
    make_circular_chain,
    mode_moments,
    mode_position_density,
    simultaneous_diagonalize,
    single_oscillator_moments,
)
from oscnet.errors import InputError
from oscnet.thermal import coth_half

from conftest import random_network


def boltzmann_moments(m, w, beta, levels=2000):
    """<q^2>, <p^2> from the level populations; <n|q^2|n> = (n + 1/2) / (m w)."""
    n = np.arange(levels)
    pop = np.exp(-beta * w * n)
    pop /= pop.sum()
    mean = np.sum(pop * (n + 0.5))
    return mean / (m * w), mean * m * w


def test_ground_state_unit_oscillator():
    assert single_oscillator_moments(1, 1, GROUND_STATE) == (0.5, 0.5)


def test_ground_state_heavy_fast():
    q2, p2 = single_oscillator_moments(2, 3, GROUND_STATE)
    assert q2 == pytest.approx(1 / 12, rel=1e-15)
    assert p2 == 3


def test_equipartition_limit():
    q2, _ = single_oscillator_moments(1, 1, ThermalEnvironment(0.01))
    assert q2 == pytest.approx(100, rel=1e-3)
    # coth(x) = 1/x + x/3 - x^3/45 + ..., x = 0.005
    x = 0.005
    assert q2 == pytest.approx(0.5 * (1 / x + x / 3 - x**3 / 45), rel=1e-14)


@pytest.mark.parametrize("m, w, beta", [(2, 3, 0.4), (1, 1, 2), (0.3, 0.7, 5), (5, 0.2, 1)])
def test_single_oscillator_vs_level_sum(m, w, beta):
    q2, p2 = single_oscillator_moments(m, w, ThermalEnvironment(beta))
    bq, bp = boltzmann_moments(m, w, beta)
    assert q2 == pytest.approx(bq, rel=1e-12)
    assert p2 == pytest.approx(bp, rel=1e-12)


def test_frozen_level_sum_value():
    q2, p2 = single_oscillator_moments(2, 3, ThermalEnvironment(0.4))
    assert q2 == pytest.approx(0.15516879344888884, rel=1e-13)
    assert p2 == pytest.approx(5.586076564159998, rel=1e-13)


def test_single_oscillator_rejects_bad_input():
    with pytest.raises(InputError):
        single_oscillator_moments(0, 1, GROUND_STATE)
    with pytest.raises(InputError):
        single_oscillator_moments(1, -1, GROUND_STATE)


def test_coth_regimes():
    assert coth_half(math.inf, 0.3) == 1.0
    assert coth_half(100.0, 1.0) == 1.0
    assert coth_half(2.0, 1.0) == pytest.approx(1 / math.tanh(1.0), rel=1e-15)
    assert coth_half(1e-9, 1.0) == pytest.approx(2e9, rel=1e-15)
    x = 0.5 * 39.9
    assert coth_half(39.9, 1.0) == pytest.approx(1 / math.tanh(x), rel=1e-16)


def one_mode(mu, lam):
    return SimpleNamespace(mu=mu, lambdas=np.array([lam], dtype=float))


def test_mode_moments_reduce_to_unit_oscillator():
    mom = mode_moments(one_mode(1.0, 1.0), GROUND_STATE)
    assert mom.q2.tolist() == [0.5] and mom.p2.tolist() == [0.5]


def test_mode_moments_by_quadrature():
    basis = one_mode(0.5, 2.0)
    env = ThermalEnvironment(2.0)
    q2 = mode_moments(basis, env).q2[0]
    second, _ = integrate.quad(lambda q: q * q * mode_position_density(basis, 0, env, q), -np.inf, np.inf)
    assert q2 == pytest.approx(0.25 / math.tanh(1.0), rel=1e-15)
    assert q2 == pytest.approx(0.3282588213748328, rel=1e-13)
    assert second == pytest.approx(q2, abs=1e-10)


@pytest.mark.parametrize("m, w, beta", [(1, 1, 2.0), (2.5, 0.4, 0.3), (0.2, 3.0, math.inf)])
def test_mode_moments_match_single_oscillator(m, w, beta):
    env = ThermalEnvironment(beta)
    mom = mode_moments(one_mode(1 / m, m * w * w), env)
    q2, p2 = single_oscillator_moments(m, w, env)
    assert mom.q2[0] == pytest.approx(q2, rel=1e-12)
    assert mom.p2[0] == pytest.approx(p2, rel=1e-12)


def test_zero_mode_rejected_by_name():
    basis = simultaneous_diagonalize(make_circular_chain(6, 1, 0, 1))
    with pytest.raises(PhysicalError, match="zero mode 1") as info:
        mode_moments(basis, ThermalEnvironment(1.0))
    assert info.value.mode == 1


def test_unstable_mode_rejected():
    with pytest.raises(PhysicalError, match="unstable"):
        mode_moments(SimpleNamespace(mu=1.0, lambdas=np.array([-1.0, 2.0])), GROUND_STATE)


def test_uncertainty_product(rng):
    net = random_network(rng, n=6)
    basis = simultaneous_diagonalize(net)
    for beta in (0.1, 1.0, 30.0, math.inf):
        mom = mode_moments(basis, ThermalEnvironment(beta))
        k = coth_half(beta, np.sqrt(basis.mu * basis.lambdas))
        np.testing.assert_allclose(mom.q2 * mom.p2, 0.25 * k * k, rtol=1e-13)
        assert np.all(mom.q2 * mom.p2 >= 0.25 * (1 - 1e-14))


def test_moments_monotone_in_beta(rng):
    basis = simultaneous_diagonalize(random_network(rng, n=5))
    betas = np.geomspace(0.01, 200, 60).tolist() + [math.inf]
    q2 = np.array([mode_moments(basis, ThermalEnvironment(b)).q2 for b in betas])
    p2 = np.array([mode_moments(basis, ThermalEnvironment(b)).p2 for b in betas])
    assert np.all(np.diff(q2, axis=0) <= 0)
    assert np.all(np.diff(p2, axis=0) <= 0)


@pytest.mark.parametrize("beta", [0.5, 3.0, math.inf])
def test_density_even_and_normalized(rng, beta):
    basis = simultaneous_diagonalize(random_network(rng, n=4))
    env = ThermalEnvironment(beta)
    mom = mode_moments(basis, env)
    for i in range(4):
        sigma = math.sqrt(mom.q2[i])
        qs = np.linspace(-5 * sigma, 5 * sigma, 11)
        np.testing.assert_array_equal(
            mode_position_density(basis, i, env, qs), mode_position_density(basis, i, env, -qs)
        )
        norm, _ = integrate.quad(lambda q: mode_position_density(basis, i, env, q), -20 * sigma, 20 * sigma, epsabs=1e-13)
        assert norm == pytest.approx(1.0, abs=1e-8)


def test_density_bad_index():
    with pytest.raises(InputError):
        mode_position_density(one_mode(1.0, 1.0), 1, GROUND_STATE, 0.0)
