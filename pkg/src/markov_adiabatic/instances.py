"""Seeded random test instances: chains, Hamiltonians and generators.

Every generator takes a ``numpy.random.Generator`` or a seed; the bit
generator is PCG64 (``numpy.random.default_rng``), so a seed fixes the
output within one numpy build.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chain_core import as_stochastic, is_irreducible_aperiodic, is_reversible, lazy, stationary_distribution
from .errors import ValidationError

RNG_NAME = "numpy.random.PCG64"

CONSTRUCTIONS = ("reversible-random", "birth-death", "lazy-random-walk")


@dataclass(frozen=True)
class RandomChainSpec:
    n: int
    construction: str = "reversible-random"
    seed: int = 0


def _rng(seed_or_rng) -> np.random.Generator:
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return np.random.default_rng(seed_or_rng)


def reversible_random(n: int, rng) -> np.ndarray:
    """Metropolis chain toward a random positive target with a random symmetric proposal.

    ``P(x, y) = K(x, y) min(1, pi(y)/pi(x))`` for a symmetric substochastic
    proposal ``K``, with the rejected mass left on the diagonal. Detailed
    balance then holds by construction.
    """
    rng = _rng(rng)
    pi = rng.uniform(0.1, 1.0, size=n)
    pi /= pi.sum()
    K = rng.uniform(0.0, 1.0, size=(n, n))
    # sparsify a little so some chains have zero entries
    K *= rng.uniform(size=(n, n)) > 0.2
    K = np.triu(K, 1)
    K = K + K.T
    ring = np.arange(n)
    K[ring, (ring + 1) % n] = np.maximum(K[ring, (ring + 1) % n], 0.05)
    K[(ring + 1) % n, ring] = K[ring, (ring + 1) % n]
    np.fill_diagonal(K, 0.0)
    K /= K.sum(axis=1).max() * rng.uniform(1.0, 1.5)
    P = K * np.minimum(1.0, pi[None, :] / pi[:, None])
    np.fill_diagonal(P, 0.0)
    np.fill_diagonal(P, 1.0 - P.sum(axis=1))
    return P


def birth_death(n: int, rng) -> np.ndarray:
    rng = _rng(rng)
    up = rng.uniform(0.05, 0.5, size=n)
    down = rng.uniform(0.05, 0.5, size=n)
    up[-1] = 0.0
    down[0] = 0.0
    P = np.diag(up[:-1], 1) + np.diag(down[1:], -1)
    np.fill_diagonal(P, 1.0 - up - down)
    return P


def lazy_random_walk(n: int, rng) -> np.ndarray:
    """Lazy simple random walk on a random connected graph (spanning path plus extra edges)."""
    rng = _rng(rng)
    A = np.zeros((n, n))
    order = rng.permutation(n)
    for a, b in zip(order[:-1], order[1:]):
        A[a, b] = A[b, a] = 1.0
    extra = np.triu(rng.uniform(size=(n, n)) < 0.3, 1)
    A = np.maximum(A, extra + extra.T)
    if n == 1:
        return np.ones((1, 1))
    return lazy(A / A.sum(axis=1, keepdims=True))


def generate_chain(spec: RandomChainSpec) -> np.ndarray:
    """Build a chain of the declared class, deterministic in ``spec.seed``."""
    if spec.n < 1:
        raise ValidationError("state-count", f"n must be >= 1, got {spec.n}")
    rng = np.random.default_rng(spec.seed)
    builders = {
        "reversible-random": reversible_random,
        "birth-death": birth_death,
        "lazy-random-walk": lazy_random_walk,
    }
    if spec.construction not in builders:
        raise ValidationError("construction", f"unknown construction {spec.construction!r}")
    P = as_stochastic(builders[spec.construction](spec.n, rng))
    if spec.n > 1:
        pi = stationary_distribution(P)
        if not is_reversible(P, pi, 1e-12):
            raise ValidationError("detailed-balance", "generated chain is not reversible")
    return P


def random_stochastic(n: int, rng) -> np.ndarray:
    """Arbitrary (generally non-reversible) chain; may be sparse or periodic."""
    rng = _rng(rng)
    M = rng.uniform(size=(n, n)) * (rng.uniform(size=(n, n)) > 0.3)
    empty = M.sum(axis=1) == 0
    M[empty, rng.integers(0, n, size=int(empty.sum()))] = 1.0
    return M / M.sum(axis=1, keepdims=True)


def random_hamiltonian(n: int, rng) -> np.ndarray:
    """Real symmetric H with ``I - H`` nonnegative and primitive.

    Diagonals of ``I - H`` are often zero so that the converted chain can
    have a dominant negative eigenvalue.
    """
    rng = _rng(rng)
    while True:
        A = rng.uniform(0.0, 2.0, size=(n, n)) * (rng.uniform(size=(n, n)) > 0.25)
        A = np.triu(A) + np.triu(A, 1).T
        if rng.uniform() < 0.5:
            np.fill_diagonal(A, 0.0)
        if is_irreducible_aperiodic(A):
            return np.eye(n) - A


def random_generator(n: int, rng, scale: float = 2.0, density: float = 0.7) -> np.ndarray:
    """Rate matrix with random off-diagonal rates; irreducible when a spanning cycle is forced."""
    rng = _rng(rng)
    R = rng.uniform(0.0, scale, size=(n, n)) * (rng.uniform(size=(n, n)) < density)
    ring = np.arange(n)
    R[ring, (ring + 1) % n] = np.maximum(R[ring, (ring + 1) % n], 0.1 * scale)
    np.fill_diagonal(R, 0.0)
    np.fill_diagonal(R, -R.sum(axis=1))
    return R
