import math

import numpy as np
import pytest

from markov_adiabatic.chain_core import is_reversible
from markov_adiabatic.ctmc import generator_stationary, uniformize
from markov_adiabatic.errors import ValidationError
from markov_adiabatic.ising import (
    IsingExperimentConfig,
    IsingModel,
    adiabatic_ising_experiment,
    all_configurations,
    decode,
    encode,
    energies,
    ferromagnet,
    gibbs_distribution,
    glauber_generator,
    ising_energy,
    load_model,
)
from markov_adiabatic.mixing import mixing_time_continuous


def _random_model(n, rng, beta=1.0):
    J = np.triu(rng.normal(size=(n, n)), 1)
    return IsingModel(n, J + J.T, rng.normal(size=n), beta)


def test_encode_decode_roundtrip():
    for n in (1, 3, 5):
        for k in range(2**n):
            assert encode(decode(k, n)) == k
    assert encode([-1, -1, -1]) == 0
    assert encode([1, -1]) == 1
    np.testing.assert_array_equal(all_configurations(2), [[-1, -1], [1, -1], [-1, 1], [1, 1]])
    with pytest.raises(ValidationError):
        encode([1, 0])


def test_energies_by_hand():
    m = ferromagnet(2, beta=1.0)
    np.testing.assert_array_equal(energies(m), [-1, 1, 1, -1])
    field = IsingModel(2, np.zeros((2, 2)), [0.5, -2.0], 1.0)
    assert ising_energy(field, [1, 1]) == pytest.approx(1.5)
    assert ising_energy(field, [-1, 1]) == pytest.approx(2.5)


def test_gibbs_by_hand():
    pi = gibbs_distribution(ferromagnet(2, beta=1.0))
    z = 2 * math.e + 2 / math.e
    np.testing.assert_allclose(pi, [math.e / z, 1 / (math.e * z), 1 / (math.e * z), math.e / z], atol=1e-15)
    np.testing.assert_allclose(gibbs_distribution(ferromagnet(3, beta=0.0)), np.full(8, 1 / 8))


def test_gibbs_large_beta_is_finite():
    pi = gibbs_distribution(ferromagnet(4, beta=500.0))
    assert np.all(np.isfinite(pi))
    assert pi[0] == pytest.approx(0.5) and pi[-1] == pytest.approx(0.5)


def test_glauber_rates_by_hand():
    Q = glauber_generator(ferromagnet(2, beta=1.0))
    # from ++ (index 3) to -+ (index 2) raises the energy by 2
    assert Q[3, 2] == pytest.approx(1 / (1 + math.e**2), abs=1e-15)
    assert Q[2, 3] == pytest.approx(1 / (1 + math.e**-2), abs=1e-15)
    assert Q[3, 0] == 0
    np.testing.assert_allclose(Q.sum(axis=1), 0, atol=1e-15)


@pytest.mark.parametrize("seed", range(10))
def test_gibbs_is_stationary_and_reversible(seed):
    rng = np.random.default_rng(seed)
    m = _random_model(2 + seed % 4, rng, beta=float(rng.uniform(0.1, 2.0)))
    Q = glauber_generator(m)
    pi = gibbs_distribution(m)
    flux = pi[:, None] * Q
    np.testing.assert_allclose(flux, flux.T, atol=1e-12)
    assert np.abs(pi @ Q).max() <= 1e-10
    np.testing.assert_allclose(generator_stationary(Q), pi, atol=1e-10)
    P = uniformize(Q, m.n).jump_chain
    assert is_reversible(P, pi, 1e-12)


def test_infinite_temperature_spectrum():
    n = 3
    P = uniformize(glauber_generator(ferromagnet(n, beta=0.0)), n).jump_chain
    ev = np.sort(np.linalg.eigvalsh(P))[::-1]
    assert ev[0] == pytest.approx(1)
    assert ev[1] == pytest.approx(1 - 1 / n, abs=1e-12)
    assert ev[1] == pytest.approx(2 / 3, abs=1e-12)


def test_model_validation():
    with pytest.raises(ValidationError):
        IsingModel(2, [[0, 1], [0.5, 0]], [0, 0])
    with pytest.raises(ValidationError):
        IsingModel(2, np.zeros((2, 2)), [0, 0], beta=-1)
    with pytest.raises(ValidationError):
        IsingModel(13, np.zeros((13, 13)), np.zeros(13))


def test_load_model(tmp_path):
    path = tmp_path / "m.yaml"
    path.write_text("n: 3\nbeta: 0.7\nJ:\n  - [0, 1, 1.0]\n  - [1, 2, -0.5]\nh:\n  - [2, 0.25]\n")
    m = load_model(path)
    assert m.n == 3 and m.beta == 0.7
    assert m.J[1, 0] == 1.0 and m.J[2, 1] == -0.5 and m.J[0, 2] == 0
    np.testing.assert_array_equal(m.h, [0, 0, 0.25])
    path.write_text("n: 2\nJ:\n  - [0, 0, 1.0]\n")
    with pytest.raises(ValidationError):
        load_model(path)
    path.write_text("- 1\n- 2\n")
    with pytest.raises(ValidationError):
        load_model(path)


def test_experiment_constant_schedule_matches_mixing_time():
    m = ferromagnet(3, beta=0.5)
    rep = adiabatic_ising_experiment(m, m, 0.2, IsingExperimentConfig(grid=0.05))
    t_mix = mixing_time_continuous(glauber_generator(m), 0.2, t_cap=50, resolution=0.05)
    assert rep.measured_time == pytest.approx(t_mix, abs=1e-9)
    assert rep.measured_time <= rep.theoretical_bound


def test_experiment_heating_within_bound():
    rep = adiabatic_ising_experiment(ferromagnet(3, beta=0.0), ferromagnet(3, beta=1.0), 0.1)
    assert 0 < rep.measured_time <= rep.theoretical_bound
    assert rep.details["n"] == 3 and rep.details["beta_final"] == 1.0


def test_experiment_size_mismatch():
    with pytest.raises(ValidationError):
        adiabatic_ising_experiment(ferromagnet(2, 1.0), ferromagnet(3, 1.0), 0.1)
