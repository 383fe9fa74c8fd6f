import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from markov_adiabatic.chain_core import (
    as_distribution,
    as_stochastic,
    is_irreducible_aperiodic,
    is_reversible,
    lazy,
    stationary_distribution,
    tv_distance,
)
from markov_adiabatic.errors import ValidationError
from markov_adiabatic.instances import birth_death, random_stochastic
from markov_adiabatic.oracles import tv_by_subsets


def test_tv_distance_examples():
    mu = np.array([0.2, 0.3, 0.5])
    assert tv_distance(mu, mu) == 0
    assert tv_distance([1, 0], [0, 1]) == 1
    assert tv_distance([0.5, 0.5], [0.75, 0.25]) == pytest.approx(0.25, abs=1e-15)


def test_tv_distance_dimension_mismatch():
    with pytest.raises(ValidationError):
        tv_distance([0.5, 0.5], [1.0, 0.0, 0.0])


def _simplex(n):
    return arrays(float, n, elements=st.floats(0, 1)).filter(lambda v: v.sum() > 1e-3).map(lambda v: v / v.sum())


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 9).flatmap(lambda n: st.tuples(_simplex(n), _simplex(n), _simplex(n))))
def test_tv_is_sup_over_events_and_a_metric(triple):
    mu, nu, rho = triple
    d = tv_distance(mu, nu)
    assert d == pytest.approx(tv_by_subsets(mu, nu), abs=1e-12)
    assert d == pytest.approx(tv_distance(nu, mu), abs=1e-15)
    assert d <= tv_distance(mu, rho) + tv_distance(rho, nu) + 1e-12


def test_stationary_examples():
    doubly = np.array([[0.2, 0.5, 0.3], [0.5, 0.1, 0.4], [0.3, 0.4, 0.3]])
    np.testing.assert_allclose(stationary_distribution(doubly), [1 / 3] * 3, atol=1e-12)
    np.testing.assert_allclose(stationary_distribution([[0.7, 0.3], [0.2, 0.8]]), [0.4, 0.6], atol=1e-12)
    row = np.array([0.1, 0.6, 0.3])
    proj = np.tile(row, (3, 1))
    np.testing.assert_allclose(proj @ proj, proj)
    np.testing.assert_allclose(stationary_distribution(proj), row, atol=1e-12)


@pytest.mark.parametrize("P, check", [
    ([[0, 1], [1, 0]], "irreducible-aperiodic"),
    ([[1, 0], [0, 1]], "irreducible-aperiodic"),
    ([[0.5, 0.6], [0.5, 0.5]], "row-sum"),
])
def test_stationary_rejects_bad_chains(P, check):
    with pytest.raises(ValidationError) as exc:
        stationary_distribution(P)
    assert exc.value.check == check


def test_is_reversible_examples():
    S = np.array([[0.5, 0.3, 0.2], [0.3, 0.4, 0.3], [0.2, 0.3, 0.5]])
    assert is_reversible(S, np.full(3, 1 / 3))
    cyc = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=float)
    assert not is_reversible(cyc, np.full(3, 1 / 3))
    P2 = np.array([[0.3, 0.7], [0.45, 0.55]])
    assert is_reversible(P2, stationary_distribution(P2))


@pytest.mark.parametrize("n", [2, 4, 7, 12])
def test_birth_death_round_trip_reversibility(n):
    P = birth_death(n, np.random.default_rng(n))
    assert is_reversible(P, stationary_distribution(P), 1e-10)


@pytest.mark.parametrize("M, expected", [
    (np.full((3, 3), 0.2), True),
    ([[0, 1], [1, 0]], False),
    ([[0.5, 0.5], [1, 0]], True),
    (np.eye(3), False),
    # 4-cycle is periodic; adding a chord of odd length makes it primitive
    (np.roll(np.eye(4), 1, axis=1), False),
    (np.roll(np.eye(3), 1, axis=1) + np.diag([0, 0, 1.0]), True),
])
def test_is_irreducible_aperiodic(M, expected):
    assert is_irreducible_aperiodic(M) is expected


def test_wielandt_extremal_matrix():
    # the Wielandt matrix needs exactly (n-1)^2 + 1 steps to become positive
    n = 6
    W = np.zeros((n, n))
    for i in range(n - 1):
        W[i, i + 1] = 1
    W[n - 1, 0] = W[n - 1, 1] = 1
    assert is_irreducible_aperiodic(W)
    assert not (np.linalg.matrix_power(W, (n - 1) ** 2) > 0).all()


def test_is_irreducible_aperiodic_rejects_negative():
    with pytest.raises(ValidationError):
        is_irreducible_aperiodic([[1.0, -0.5], [0.5, 0.5]])


def test_lazy_examples():
    np.testing.assert_array_equal(lazy(np.eye(3)), np.eye(3))
    np.testing.assert_array_equal(lazy([[0, 1], [1, 0]]), [[0.5, 0.5], [0.5, 0.5]])
    P = np.array([[0.25, 0.75], [0.75, 0.25]])
    np.testing.assert_allclose(np.sort(np.linalg.eigvals(P).real), [-0.5, 1])
    np.testing.assert_allclose(np.sort(np.linalg.eigvals(lazy(P)).real), [0.25, 1])


@pytest.mark.parametrize("seed", range(10))
def test_lazy_lazy_spectrum_at_least_half(seed):
    P = random_stochastic(5, np.random.default_rng(seed))
    ev = np.linalg.eigvals(lazy(lazy(P)))
    assert ev.real.min() >= 0.5 - 1e-12


@pytest.mark.parametrize("seed", range(10))
def test_products_and_mixtures_stay_stochastic(seed):
    rng = np.random.default_rng(seed)
    A, B = random_stochastic(6, rng), random_stochastic(6, rng)
    w = rng.uniform()
    for M in (A @ B, w * A + (1 - w) * B, np.linalg.matrix_power(A, 7)):
        np.testing.assert_allclose(M.sum(axis=1), 1, atol=1e-10)
        as_stochastic(M, tol=1e-10)


def test_clamping_small_negatives():
    v = as_distribution([0.5 + 5e-13, 0.5, -5e-13])
    assert v.min() == 0 and v.sum() == pytest.approx(1, abs=1e-15)
    P = as_stochastic([[1 + 1e-13, -1e-13], [0.5, 0.5]])
    assert P.min() == 0
    with pytest.raises(ValidationError):
        as_distribution([1.1, -0.1])


@pytest.mark.parametrize("bad", [[0.5, np.nan], [np.inf, 0.0], [0.3, 0.3]])
def test_as_distribution_rejects(bad):
    with pytest.raises(ValidationError):
        as_distribution(bad)
