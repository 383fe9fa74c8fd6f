"""The acceptance battery: each criterion is a function returning a CriterionResult.

Instances are drawn from PCG64 streams keyed by ``(seed, criterion)``, so
one criterion's draws never shift another's.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import oracles
from .adiabatic_continuous import adiabatic_time_continuous
from .adiabatic_discrete import AdiabaticSchedule, adiabatic_error, adiabatic_time
from .chain_core import stationary_distribution
from .ctmc import generator_stationary, max_departure_rate, transition_matrix
from .hamiltonian import chain_to_hamiltonian, hamiltonian_to_chain, lazy_gap_relation
from .instances import (
    RandomChainSpec,
    generate_chain,
    random_generator,
    random_hamiltonian,
    random_stochastic,
    reversible_random,
)
from .ising import IsingExperimentConfig, adiabatic_ising_experiment, ferromagnet, gibbs_distribution, glauber_generator
from .mixing import mixing_time, worst_case_tv_rows
from .spectral import mixing_time_bounds, reversible_spectrum, spectral_gap

DEFAULT_SEED = 20240601


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    checks: int = 0
    violations: list = field(default_factory=list)
    summary: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" {self.summary}" if self.summary else ""
        return f"[{status}] {self.number}. {self.name}: {self.checks} checks, {len(self.violations)} violations.{extra}"


def _rng(seed: int, criterion: int) -> np.random.Generator:
    return np.random.default_rng([seed, criterion])


def _result(number, name, checks, violations, summary=""):
    return CriterionResult(number, name, not violations, checks, violations, summary)


def relaxation_sandwich(seed: int = DEFAULT_SEED) -> CriterionResult:
    """(tau - 1) log(1/(2 eps)) <= t_mix(eps) <= tau log(1/(eps pi_min)) on 100 reversible chains."""
    rng = _rng(seed, 1)
    constructions = ("reversible-random", "birth-death", "lazy-random-walk")
    checks, bad = 0, []
    for k in range(100):
        n = 3 + k % 6
        spec = RandomChainSpec(n, constructions[k % 3], int(rng.integers(2**63)))
        P = generate_chain(spec)
        pi = stationary_distribution(P)
        g = spectral_gap(reversible_spectrum(P, pi))
        for eps in (0.25, 0.05):
            t = mixing_time(P, eps, pi=pi)
            lo, hi = mixing_time_bounds(g, pi, eps)
            checks += 1
            if not lo <= t <= hi:
                bad.append((k, eps, lo, t, hi))
    return _result(1, "relaxation/mixing sandwich", checks, bad)


def conversion_identities(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _rng(seed, 2)
    checks, bad = 0, []
    gap_cases = 0
    for k in range(50):
        n = 2 + k % 7
        H = random_hamiltonian(n, rng)
        c = hamiltonian_to_chain(H)
        P, pi, lam0 = c.chain, c.stationary, c.ground_energy
        top = 1.0 - lam0
        alpha_sq = pi
        tests = {
            "row-sum": np.abs(P.sum(axis=1) - 1).max() <= 1e-10,
            "detailed-balance": np.abs(alpha_sq[:, None] * P - (alpha_sq[:, None] * P).T).max() <= 1e-10,
            "spectrum": np.abs(c.chain_spectrum - (1 - c.hamiltonian_spectrum) / top).max() <= 1e-9,
        }
        if c.gap_relation_applies:
            gap_cases += 1
            tests["gap"] = abs(c.chain_gap * top - c.hamiltonian_gap) <= 1e-10
        lazy_gap, predicted = lazy_gap_relation(H)
        tests["lazy-gap"] = abs(lazy_gap - predicted) <= 1e-10
        tests["roundtrip"] = np.abs(chain_to_hamiltonian(P, pi, lam0) - H).max() <= 1e-9
        for name, ok in tests.items():
            checks += 1
            if not ok:
                bad.append((k, name))
    return _result(2, "Hamiltonian conversion identities", checks, bad,
                   f"(gap relation applicable in {gap_cases}/50)")


def discrete_adiabatic_bound(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _rng(seed, 3)
    checks, bad = 0, []
    worst = 0.0
    for k in range(20):
        n = 2 + k % 5
        p_final = reversible_random(n, rng)
        p_initial = random_stochastic(n, rng)
        pi = stationary_distribution(p_final)
        for eps in (0.5, 0.25, 0.1):
            rep = adiabatic_time(p_initial, p_final, eps)
            T_bound = int(rep.theoretical_bound)
            err_at_bound = adiabatic_error(AdiabaticSchedule(p_initial, p_final, T_bound), pi)
            worst = max(worst, rep.measured_time / T_bound)
            checks += 2
            if rep.measured_time > T_bound:
                bad.append((k, eps, "measured", rep.measured_time, T_bound))
            if err_at_bound > eps:
                bad.append((k, eps, "error-at-bound", err_at_bound))
    return _result(3, "discrete adiabatic time <= K t_mix(eps/2)", checks, bad,
                   f"(max measured/bound {worst:.3f})")


def uniformization(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _rng(seed, 4)
    checks, bad = 0, []
    # the oracle itself must reproduce the two-state closed form first
    for t in (0.1, 1.0, 10.0):
        checks += 1
        Q2 = np.array([[-1.0, 1.0], [1.0, -1.0]])
        if np.abs(oracles.expm_taylor(t * Q2) - oracles.two_state_transition(1, 1, t)).max() > 1e-12:
            bad.append(("oracle", t))
    dev = [0.0, 0.0, 0.0]
    times = (0.1, 1.0, 10.0)
    for k in range(20):
        n = int(rng.integers(2, 7))
        Q = random_generator(n, rng)
        lam = max_departure_rate(Q)
        P = {t: transition_matrix(Q, t) for t in times}
        for t in times:
            d = np.abs(P[t] - oracles.expm_taylor(t * Q)).max()
            dev[0] = max(dev[0], d)
            checks += 1
            if d > 1e-8:
                bad.append((k, "oracle", t, d))
            d = np.abs(transition_matrix(Q, t, lam) - transition_matrix(Q, t, 2.0 * lam)).max()
            dev[2] = max(dev[2], d)
            checks += 1
            if d > 2e-12:
                bad.append((k, "lambda-invariance", t, d))
        for s in times:
            for t in times:
                d = np.abs(transition_matrix(Q, s + t) - P[s] @ P[t]).max()
                dev[1] = max(dev[1], d)
                checks += 1
                if d > 3e-12:
                    bad.append((k, "semigroup", s, t, d))
    return _result(4, "uniformization correctness", checks, bad,
                   f"(max dev: oracle {dev[0]:.1e}, semigroup {dev[1]:.1e}, lambda {dev[2]:.1e})")


def continuous_adiabatic_bound(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _rng(seed, 5)
    checks, bad = 0, []
    worst = 0.0
    for k in range(10):
        n = 2 + k % 4
        q_i = random_generator(n, rng)
        q_f = random_generator(n, rng)
        for eps in (0.25, 0.1):
            rep = adiabatic_time_continuous(q_i, q_f, eps, grid=0.01, lambda_step=0.05)
            worst = max(worst, rep.measured_time / rep.theoretical_bound)
            checks += 1
            if rep.measured_time > rep.theoretical_bound:
                bad.append((k, eps, rep.measured_time, rep.theoretical_bound))
    return _result(5, "continuous adiabatic time <= lam t_mix(eps/2)^2 / eps", checks, bad,
                   f"(max measured/bound {worst:.3f})")


def glauber_pipeline(seed: int = DEFAULT_SEED) -> CriterionResult:
    checks, bad = 0, []
    ratios = []
    for n in (2, 3, 4):
        for beta in (0.0, 0.5, 1.0):
            m = ferromagnet(n, beta)
            Q = glauber_generator(m)
            pi = gibbs_distribution(m)
            flow = pi[:, None] * Q
            off = ~np.eye(Q.shape[0], dtype=bool)
            db = np.abs(flow - flow.T)[off].max()
            stat = np.abs(pi @ Q).max()
            checks += 2
            if db > 1e-12:
                bad.append((n, beta, "detailed-balance", db))
            if stat > 1e-10:
                bad.append((n, beta, "stationarity", stat))
        rep = adiabatic_ising_experiment(ferromagnet(n, 0.2), ferromagnet(n, 1.0), 0.25,
                                         IsingExperimentConfig(grid=0.02))
        ratios.append(rep.measured_time / rep.theoretical_bound)
        checks += 1
        if rep.measured_time > rep.theoretical_bound:
            bad.append((n, "adiabatic", rep.measured_time, rep.theoretical_bound))
    return _result(6, "Glauber/Ising pipeline", checks, bad, f"(max measured/bound {max(ratios):.3f})")


def extreme_points(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = _rng(seed, 7)
    checks, bad = 0, []
    for k in range(20):
        n = 2 + k % 7
        P = reversible_random(n, rng) if k % 2 else random_stochastic(n, rng)
        pi = stationary_distribution(P, check=False)
        t = 1 + k % 3
        Pt = np.linalg.matrix_power(P, t)
        vertex = worst_case_tv_rows(Pt, pi)
        nus = rng.dirichlet(np.full(n, 0.5), size=1000)
        sampled = float((0.5 * np.abs(nus @ Pt - pi).sum(axis=1)).max())
        checks += 1
        if sampled > vertex + 1e-12:
            bad.append((k, sampled, vertex))
    return _result(7, "extreme-point reduction", checks, bad)


def worked_examples(seed: int = DEFAULT_SEED) -> CriterionResult:
    checks, bad = 0, []

    def check(name, ok):
        nonlocal checks
        checks += 1
        if not ok:
            bad.append(name)

    P = np.array([[0.9, 0.1], [0.1, 0.9]])
    pi = stationary_distribution(P)
    g = spectral_gap(reversible_spectrum(P, pi))
    check("gap", abs(g.gap - 0.2) <= 1e-3)
    check("tau", abs(g.relaxation_time - 5) <= 1e-3)
    check("t_mix", mixing_time(P, 0.25) == 4)
    lo, hi = mixing_time_bounds(g, pi, 0.25)
    check("lower", abs(lo - 4 * math.log(2)) <= 1e-3 and abs(lo - 2.7726) <= 1e-3)
    check("upper", abs(hi - 5 * math.log(8)) <= 1e-3 and abs(hi - 10.397) <= 1e-3)
    H = np.array([[-1.0, -1.0], [-1.0, -1.0]])
    c = hamiltonian_to_chain(H)
    check("P", np.abs(c.chain - np.array([[2 / 3, 1 / 3], [1 / 3, 2 / 3]])).max() <= 1e-12)
    check("beta", abs(c.chain_gap - 2 / 3) <= 1e-12)
    check("lazy-gap", abs(lazy_gap_relation(H)[0] - 1 / 3) <= 1e-12)
    return _result(8, "worked-example regression", checks, bad)


CRITERIA = (
    relaxation_sandwich,
    conversion_identities,
    discrete_adiabatic_bound,
    uniformization,
    continuous_adiabatic_bound,
    glauber_pipeline,
    extreme_points,
    worked_examples,
)


def run_suite(seed: int = DEFAULT_SEED, only=None) -> list[CriterionResult]:
    results = []
    for i, fn in enumerate(CRITERIA, start=1):
        if only and i not in only:
            continue
        results.append(fn(seed))
    return results
