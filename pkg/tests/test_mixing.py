import math

import numpy as np
import pytest

from markov_adiabatic.chain_core import stationary_distribution
from markov_adiabatic.ctmc import max_departure_rate, uniformize
from markov_adiabatic.errors import CapExceededError, ValidationError
from markov_adiabatic.instances import RandomChainSpec, generate_chain, random_generator, random_stochastic
from markov_adiabatic.mixing import mixing_curve, mixing_time, mixing_time_continuous, worst_case_tv
from markov_adiabatic.oracles import brute_mixing_time

P2 = np.array([[0.9, 0.1], [0.1, 0.9]])


def test_worst_case_tv_examples():
    assert worst_case_tv(P2, 0, [0.5, 0.5]) == 0.5
    assert worst_case_tv([[0.5, 0.5], [0.5, 0.5]], 1) == pytest.approx(0, abs=1e-15)
    # delta_0 P^t = ((1 + 0.8^t)/2, (1 - 0.8^t)/2)
    assert worst_case_tv(P2, 3) == pytest.approx(0.8**3 / 2, abs=1e-14)
    assert 0.8**3 / 2 == pytest.approx(0.256)


def test_worst_case_tv_negative_time():
    with pytest.raises(ValidationError):
        worst_case_tv(P2, -1)


def test_mixing_time_examples():
    assert mixing_time([[0.5, 0.5], [0.5, 0.5]], 0.25) == 1
    assert mixing_time(P2, 0.25) == 4
    with pytest.raises(CapExceededError) as exc:
        mixing_time(np.eye(3), 0.25, cap=50)
    assert exc.value.last_distance == pytest.approx(2 / 3)


@pytest.mark.parametrize("seed", range(15))
def test_mixing_time_agrees_with_brute_force(seed):
    P = generate_chain(RandomChainSpec(2 + seed % 6, "reversible-random", seed))
    pi = stationary_distribution(P)
    for eps in (0.4, 0.1, 0.01):
        t = mixing_time(P, eps)
        assert t == brute_mixing_time(P, pi, eps)
        curve = mixing_curve(P, t, pi).distances
        assert curve[t] <= eps
        if t >= 1:
            assert curve[t - 1] > eps


@pytest.mark.parametrize("seed", range(15))
def test_worst_case_distance_is_monotone(seed):
    P = random_stochastic(6, np.random.default_rng(seed))
    P = 0.45 * (P + np.eye(6)) + 0.1 / 6
    pi = stationary_distribution(P)
    d = mixing_curve(P, 40, pi).distances
    assert np.all(np.diff(d) <= 1e-12)


@pytest.mark.parametrize("seed", range(10))
def test_point_masses_dominate_random_initial_laws(seed):
    rng = np.random.default_rng(seed)
    P = random_stochastic(5, rng)
    P = 0.45 * (P + np.eye(5)) + 0.1 / 5
    pi = stationary_distribution(P)
    for t in (1, 3):
        Pt = np.linalg.matrix_power(P, t)
        nus = rng.dirichlet(np.ones(5), size=1000)
        sampled = (0.5 * np.abs(nus @ Pt - pi).sum(axis=1)).max()
        assert sampled <= worst_case_tv(P, t, pi) + 1e-12


def test_mixing_time_continuous_examples():
    Q = np.array([[-1.0, 1.0], [1.0, -1.0]])
    # d(t) = exp(-2t)/2
    t = mixing_time_continuous(Q, 0.25, t_cap=10, resolution=1e-4)
    assert math.log(2) / 2 <= t < math.log(2) / 2 + 1e-4
    assert mixing_time_continuous(Q, 0.5) == 0
    assert mixing_time_continuous(Q, 0.7) == 0
    with pytest.raises(CapExceededError):
        mixing_time_continuous(np.zeros((2, 2)), 0.25, t_cap=1.0)


def test_mixing_time_continuous_default_grid():
    Q = np.array([[-1.0, 1.0], [1.0, -1.0]])
    # resolution defaults to t_cap / 1000
    assert mixing_time_continuous(Q, 0.25, t_cap=10) == pytest.approx(0.35)


@pytest.mark.parametrize("seed", range(12))
def test_continuous_and_discrete_agree_on_lazy_uniformization(seed):
    rng = np.random.default_rng(seed)
    Q = random_generator(int(rng.integers(2, 7)), rng, scale=float(rng.uniform(0.3, 3)))
    lam = 2 * max_departure_rate(Q)
    P = uniformize(Q, lam).jump_chain
    for eps in (0.25, 0.1):
        tc = mixing_time_continuous(Q, eps, t_cap=1e3, resolution=1e-3)
        assert abs(tc - mixing_time(P, eps) / lam) <= 2 / lam
