"""Continuous-time chains: generators, uniformization and ``P(t)``.

``P(t) = sum_n Poisson(lambda t; n) * P_lambda^n`` with ``P_lambda = I + Q/lambda``.
The series is cut at the first index where the accumulated Poisson mass
reaches ``1 - tol``; every partial sum is a nonnegative matrix whose rows
sum to that accumulated mass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._defaults import CLAMP_TOL, RESIDUAL_TOL, SERIES_TOL, VALIDATION_TOL
from .chain_core import as_distribution, as_square, is_irreducible_aperiodic
from .errors import NumericalError, ValidationError

__all__ = [
    "UniformizedChain",
    "as_generator",
    "max_departure_rate",
    "uniformize",
    "poisson_weights",
    "transition_matrix",
    "generator_stationary",
]


@dataclass(frozen=True)
class UniformizedChain:
    lam: float
    jump_chain: np.ndarray


def as_generator(Q, tol: float = VALIDATION_TOL) -> np.ndarray:
    """Validate a rate matrix: off-diagonals >= 0 and zero row sums."""
    Q = as_square(Q, "generator")
    off = Q - np.diag(np.diag(Q))
    if (off < 0).any():
        i, j = np.unravel_index(np.argmin(off), off.shape)
        if off[i, j] <= -CLAMP_TOL:
            raise ValidationError("negative-rate", f"rate {off[i, j]:.3g}", (int(i), int(j)))
        Q = Q.copy()
        Q[(off < 0)] = 0.0
        np.fill_diagonal(Q, 0.0)
        np.fill_diagonal(Q, -Q.sum(axis=1))
    sums = Q.sum(axis=1)
    scale = np.maximum(1.0, np.abs(np.diag(Q)))
    bad = np.flatnonzero(np.abs(sums) > tol * scale)
    if bad.size:
        i = int(bad[0])
        raise ValidationError("row-sum", f"generator row {i} sums to {sums[i]:.3g}", (i,))
    return Q


def max_departure_rate(Q) -> float:
    """``max_i sum_{j != i} q(i, j)``."""
    Q = np.asarray(Q, dtype=float)
    off = Q - np.diag(np.diag(Q))
    return float(off.sum(axis=1).max())


def uniformize(Q, lam: float) -> UniformizedChain:
    Q = as_generator(Q)
    rates = (Q - np.diag(np.diag(Q))).sum(axis=1)
    if not lam > 0:
        raise ValidationError("uniformization-rate", f"lambda must be positive, got {lam}")
    # relative slack for rates computed in floating point
    over = np.flatnonzero(rates > lam * (1 + 1e-12))
    if over.size:
        i = int(over[0])
        raise ValidationError("uniformization-rate",
                              f"lambda={lam} below departure rate {rates[i]:.6g} of row {i}", (i,))
    P = np.eye(Q.shape[0]) + Q / lam
    P[P < 0] = 0.0
    return UniformizedChain(lam=float(lam), jump_chain=P)


def poisson_weights(mean: float, tol: float = SERIES_TOL) -> np.ndarray:
    """Poisson(mean) probabilities for n = 0..N, N the first index with cumulative mass >= 1 - tol.

    Terms are formed in log space so large means do not underflow ``exp(-mean)``.
    """
    if mean < 0:
        raise ValidationError("time-range", "Poisson mean must be nonnegative")
    if mean == 0:
        return np.ones(1)
    log_mean = math.log(mean)
    weights = []
    total = 0.0
    n = 0
    # hard stop far beyond any realistic tail
    n_max = int(mean + 40.0 * math.sqrt(mean) + 200)
    while True:
        w = math.exp(-mean + n * log_mean - math.lgamma(n + 1))
        weights.append(w)
        total += w
        if total >= 1.0 - tol:
            break
        # past the mode with negligible terms: the shortfall is rounding in the sum
        if n > mean and w < 1e-3 * tol:
            break
        n += 1
        if n > n_max:
            raise NumericalError(f"Poisson series for mean {mean:.6g} did not reach mass 1 - {tol}",
                                 1.0 - total)
    return np.array(weights)


def _series(P_lam: np.ndarray, weights: np.ndarray) -> np.ndarray:
    # works for a single matrix or a stack (..., n, n)
    n = P_lam.shape[-1]
    term = np.broadcast_to(np.eye(n), P_lam.shape).copy()
    out = weights[0] * term
    for w in weights[1:]:
        term = term @ P_lam
        out = out + w * term
    return out


def transition_matrix(Q, t: float, lam: float | None = None, tol: float = SERIES_TOL) -> np.ndarray:
    """Transition probabilities ``P(t) = exp(tQ)`` by truncated uniformization."""
    if t < 0:
        raise ValidationError("time-range", f"t must be nonnegative, got {t}")
    Q = as_generator(Q)
    n = Q.shape[0]
    if lam is None:
        lam = max_departure_rate(Q)
    if t == 0 or lam == 0:
        return np.eye(n)
    chain = uniformize(Q, lam)
    return _series(chain.jump_chain, poisson_weights(lam * t, tol))


def generator_stationary(Q, check: bool = True, residual_tol: float = RESIDUAL_TOL) -> np.ndarray:
    """Solve ``pi Q = 0`` with ``sum(pi) = 1``.

    With ``check`` the generator must be irreducible, tested on the pattern
    of ``I + Q/lambda``.
    """
    Q = as_generator(Q)
    n = Q.shape[0]
    if check:
        lam = max_departure_rate(Q)
        if lam == 0 and n > 1:
            raise ValidationError("irreducible", "generator has no transitions")
        if lam > 0 and not is_irreducible_aperiodic(uniformize(Q, 2.0 * lam).jump_chain):
            raise ValidationError("irreducible", "generator is reducible")
    A = np.vstack([Q.T, np.ones((1, n))])
    b = np.zeros(n + 1)
    b[-1] = 1.0
    pi, *_ = np.linalg.lstsq(A, b, rcond=None)
    pi = as_distribution(pi / pi.sum(), tol=1e-8)
    scale = max(1.0, float(np.abs(Q).max()))
    resid = float(np.abs(pi @ Q).max())
    if check and resid > residual_tol * scale:
        raise NumericalError("stationary solve for generator failed", resid)
    return pi
