"""Finite probability distributions and discrete-time stochastic matrices.

Distributions are 1-d float arrays, transition matrices are square 2-d float
arrays acting on row vectors (``nu @ P``). The ``as_*`` helpers validate and
return fresh copies, so downstream code never mutates caller data.
"""

from __future__ import annotations

import numpy as np

from ._defaults import CLAMP_TOL, RESIDUAL_TOL, VALIDATION_TOL
from .errors import NumericalError, ValidationError

__all__ = [
    "as_distribution",
    "as_stochastic",
    "as_square",
    "tv_distance",
    "stationary_distribution",
    "is_reversible",
    "is_irreducible_aperiodic",
    "lazy",
    "point_masses",
]


def _clamp(x: np.ndarray, what: str) -> np.ndarray:
    neg = x < 0
    if not neg.any():
        return x
    worst = np.unravel_index(np.argmin(x), x.shape)
    if x[worst] <= -CLAMP_TOL:
        raise ValidationError(
            "negative-entry", f"{what} has entry {x[worst]:.3g}",
            tuple(int(i) for i in worst),
        )
    x = x.copy()
    x[neg] = 0.0
    return x


def as_square(M, what: str = "matrix") -> np.ndarray:
    M = np.array(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise ValidationError("shape", f"{what} must be a non-empty square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValidationError("finite", f"{what} has NaN or infinite entries")
    return M


def as_distribution(weights, tol: float = VALIDATION_TOL) -> np.ndarray:
    """Validate a probability vector and return a float copy.

    Entries in ``(-1e-12, 0)`` are zeroed and the vector is renormalized;
    anything more negative, or a total off by more than ``tol``, is rejected.
    """
    w = np.array(weights, dtype=float)
    if w.ndim != 1 or w.size == 0:
        raise ValidationError("shape", f"distribution must be a non-empty vector, got shape {w.shape}")
    if not np.all(np.isfinite(w)):
        raise ValidationError("finite", "distribution has NaN or infinite entries")
    clamped = _clamp(w, "distribution")
    total = clamped.sum()
    if abs(w.sum() - 1.0) > tol:
        raise ValidationError("normalization", f"distribution sums to {w.sum():.17g}")
    if clamped is not w:
        clamped = clamped / total
    return clamped


def as_stochastic(P, tol: float = VALIDATION_TOL) -> np.ndarray:
    """Validate a row-stochastic matrix and return a float copy."""
    P = as_square(P, "stochastic matrix")
    clamped = _clamp(P, "stochastic matrix")
    sums = P.sum(axis=1)
    bad = np.flatnonzero(np.abs(sums - 1.0) > tol)
    if bad.size:
        i = int(bad[0])
        raise ValidationError("row-sum", f"row {i} sums to {sums[i]:.17g}", (i,))
    if clamped is not P:
        clamped = clamped / clamped.sum(axis=1, keepdims=True)
    return clamped


def tv_distance(mu, nu) -> float:
    """Total variation distance ``0.5 * sum |mu - nu|``."""
    mu = np.asarray(mu, dtype=float)
    nu = np.asarray(nu, dtype=float)
    if mu.shape != nu.shape:
        raise ValidationError("dimension", f"shapes {mu.shape} and {nu.shape} differ")
    return 0.5 * float(np.abs(mu - nu).sum())


def is_irreducible_aperiodic(M) -> bool:
    """True iff some power of the nonnegative matrix ``M`` is strictly positive.

    A primitive n x n pattern becomes positive by power ``(n-1)**2 + 1``
    (Wielandt) and stays positive afterwards, so squaring the positivity
    pattern until the exponent passes that bound decides the question exactly.
    """
    M = as_square(M)
    if (M < 0).any():
        i = np.unravel_index(np.argmin(M), M.shape)
        raise ValidationError("negative-entry", f"entry {M[i]:.3g} is negative", tuple(int(k) for k in i))
    n = M.shape[0]
    wielandt = (n - 1) ** 2 + 1
    B = (M > 0).astype(float)
    power = 1
    while True:
        if B.all():
            return True
        if power >= wielandt:
            return False
        B = ((B @ B) > 0).astype(float)
        power *= 2


def stationary_distribution(P, check: bool = True, residual_tol: float = RESIDUAL_TOL) -> np.ndarray:
    """Solve ``pi P = pi`` with ``sum(pi) = 1`` as one overdetermined linear system."""
    P = as_stochastic(P)
    n = P.shape[0]
    if check and not is_irreducible_aperiodic(P):
        raise ValidationError("irreducible-aperiodic", "chain is reducible or periodic")
    A = np.vstack([P.T - np.eye(n), np.ones((1, n))])
    b = np.zeros(n + 1)
    b[-1] = 1.0
    pi, *_ = np.linalg.lstsq(A, b, rcond=None)
    pi = as_distribution(pi / pi.sum(), tol=1e-8)
    resid = float(np.abs(pi @ P - pi).max())
    if resid > residual_tol:
        raise NumericalError("stationary solve did not converge", resid)
    return pi


def is_reversible(P, pi, tol: float = RESIDUAL_TOL) -> bool:
    """Detailed balance ``pi(x) P(x,y) == pi(y) P(y,x)`` up to ``tol``."""
    P = np.asarray(P, dtype=float)
    pi = np.asarray(pi, dtype=float)
    if P.ndim != 2 or P.shape != (pi.size, pi.size):
        raise ValidationError("dimension", f"matrix {P.shape} vs distribution {pi.shape}")
    flow = pi[:, None] * P
    return bool(np.abs(flow - flow.T).max() <= tol)


def lazy(P) -> np.ndarray:
    """The lazy chain ``(I + P) / 2``."""
    P = as_stochastic(P)
    return 0.5 * (np.eye(P.shape[0]) + P)


def point_masses(n: int) -> np.ndarray:
    """Rows are the n point-mass distributions; the vertices of the simplex."""
    return np.eye(n)
