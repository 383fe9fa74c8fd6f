"""Heat-bath Glauber dynamics for small Ising models, as dense generators.

States are indexed by the integer whose bit i is ``(sigma_i + 1) / 2``, so
state 0 is all spins down and ``2**n - 1`` is all up.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from .adiabatic_continuous import adiabatic_time_continuous
from .adiabatic_discrete import AdiabaticReport
from .errors import ValidationError

__all__ = [
    "IsingModel",
    "encode",
    "decode",
    "all_configurations",
    "ising_energy",
    "energies",
    "gibbs_distribution",
    "glauber_generator",
    "ferromagnet",
    "load_model",
    "adiabatic_ising_experiment",
]

MAX_SPINS = 12


@dataclass(frozen=True)
class IsingModel:
    n: int
    J: np.ndarray
    h: np.ndarray
    beta: float = 1.0

    def __post_init__(self):
        n = int(self.n)
        if not 1 <= n <= MAX_SPINS:
            raise ValidationError("spin-count", f"n must lie in 1..{MAX_SPINS}, got {self.n}")
        J = np.array(self.J, dtype=float)
        h = np.array(self.h, dtype=float)
        if J.shape != (n, n) or h.shape != (n,):
            raise ValidationError("dimension", f"J {J.shape} and h {h.shape} do not match n={n}")
        if not np.allclose(J, J.T, rtol=0, atol=0) or np.any(np.diag(J) != 0):
            raise ValidationError("couplings", "J must be symmetric with zero diagonal")
        if not self.beta >= 0:
            raise ValidationError("temperature", f"beta must be >= 0, got {self.beta}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "beta", float(self.beta))

    def with_beta(self, beta: float) -> "IsingModel":
        return IsingModel(self.n, self.J, self.h, beta)


def encode(sigma) -> int:
    sigma = np.asarray(sigma)
    if not np.all(np.abs(sigma) == 1):
        raise ValidationError("spin-values", "spins must be +1 or -1")
    bits = (sigma + 1) // 2
    return int(sum(int(b) << i for i, b in enumerate(bits)))


def decode(index: int, n: int) -> np.ndarray:
    return np.array([2 * ((index >> i) & 1) - 1 for i in range(n)], dtype=int)


def all_configurations(n: int) -> np.ndarray:
    """``(2**n, n)`` array of spins in index order."""
    idx = np.arange(2**n)[:, None]
    return 2 * ((idx >> np.arange(n)[None, :]) & 1) - 1


def ising_energy(m: IsingModel, sigma) -> float:
    """``E = -sum_{i<j} J_ij s_i s_j - sum_i h_i s_i``."""
    s = np.asarray(sigma, dtype=float)
    if s.shape != (m.n,):
        raise ValidationError("dimension", f"configuration of length {s.size} for n={m.n}")
    return float(-0.5 * s @ m.J @ s - m.h @ s)


def energies(m: IsingModel) -> np.ndarray:
    S = all_configurations(m.n).astype(float)
    return -0.5 * np.einsum("ki,ij,kj->k", S, m.J, S) - S @ m.h


def gibbs_distribution(m: IsingModel) -> np.ndarray:
    E = energies(m)
    w = np.exp(-m.beta * (E - E.min()))
    return w / w.sum()


def glauber_generator(m: IsingModel) -> np.ndarray:
    """Single-spin-flip generator with heat-bath rates ``1 / (1 + exp(beta dE))``."""
    E = energies(m)
    N = 2**m.n
    Q = np.zeros((N, N))
    states = np.arange(N)
    for i in range(m.n):
        flipped = states ^ (1 << i)
        dE = E[flipped] - E
        # logistic written to stay finite for large |beta dE|
        Q[states, flipped] = 0.5 * (1.0 - np.tanh(0.5 * m.beta * dE))
    np.fill_diagonal(Q, -Q.sum(axis=1))
    return Q


def ferromagnet(n: int, beta: float, coupling: float = 1.0, periodic: bool = False) -> IsingModel:
    """Nearest-neighbour chain with uniform ferromagnetic coupling and no field."""
    J = np.zeros((n, n))
    for i in range(n - 1):
        J[i, i + 1] = J[i + 1, i] = coupling
    if periodic and n > 2:
        J[0, n - 1] = J[n - 1, 0] = coupling
    return IsingModel(n, J, np.zeros(n), beta)


def load_model(path) -> IsingModel:
    """Read a model file with keys ``n``, ``beta``, ``J`` (i j value triples) and ``h`` (i value pairs)."""
    raw = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
    if not isinstance(raw, dict) or "n" not in raw:
        raise ValidationError("model-file", f"{path}: expected a mapping with key 'n'")
    n = int(raw["n"])
    J = np.zeros((n, n))
    for entry in raw.get("J") or []:
        i, j, v = int(entry[0]), int(entry[1]), float(entry[2])
        if i == j or not (0 <= i < n and 0 <= j < n):
            raise ValidationError("model-file", f"bad coupling index pair ({i}, {j})")
        J[i, j] = J[j, i] = v
    h = np.zeros(n)
    for entry in raw.get("h") or []:
        h[int(entry[0])] = float(entry[1])
    if not np.all(np.isfinite(J)) or not np.all(np.isfinite(h)):
        raise ValidationError("finite", f"{path}: non-finite couplings or fields")
    return IsingModel(n, J, h, float(raw.get("beta", 1.0)))


@dataclass
class IsingExperimentConfig:
    T_cap: float = 1e3
    grid: float = 0.05
    lambda_step: float = 0.1
    # uniformization rate for the simulation; None means the spin count
    lam: float | None = None
    extra: dict = field(default_factory=dict)


def adiabatic_ising_experiment(m_init: IsingModel, m_final: IsingModel, eps: float,
                               config: IsingExperimentConfig | None = None) -> AdiabaticReport:
    """Adiabatic time for the generator path between two Glauber generators, with its bound.

    The interpolation acts on the generators themselves, not on the model
    parameters.
    """
    if m_init.n != m_final.n:
        raise ValidationError("dimension", f"models have {m_init.n} and {m_final.n} spins")
    config = config or IsingExperimentConfig()
    q_i = glauber_generator(m_init)
    q_f = glauber_generator(m_final)
    lam = float(m_init.n) if config.lam is None else config.lam
    report = adiabatic_time_continuous(q_i, q_f, eps, T_cap=config.T_cap, grid=config.grid,
                                       lam=lam, lambda_step=config.lambda_step)
    report.details.update(n=m_init.n, beta_init=m_init.beta, beta_final=m_final.beta)
    return report
