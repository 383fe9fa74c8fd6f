"""Slow, independent reference computations used to cross-check the fast paths.

Nothing here imports the routines it is meant to check.
"""

from __future__ import annotations

import itertools
from functools import reduce

import numpy as np


def expm_taylor(A, terms: int = 30) -> np.ndarray:
    """Matrix exponential by scaling and squaring around a truncated Taylor series.

    A is scaled by 2**-s until its 1-norm is at most 1/2, the Taylor series is
    summed with Horner's rule, and the result squared s times.
    """
    A = np.asarray(A, dtype=float)
    norm = np.abs(A).sum(axis=0).max()
    s = 0 if norm <= 0.5 else int(np.ceil(np.log2(norm / 0.5)))
    B = A / 2.0**s
    n = A.shape[0]
    E = np.eye(n)
    for k in range(terms, 0, -1):
        E = np.eye(n) + (B @ E) / k
    for _ in range(s):
        E = E @ E
    return E


def two_state_transition(a: float, b: float, t: float) -> np.ndarray:
    """Closed form of exp(tQ) for Q = [[-a, a], [b, -b]]."""
    r = a + b
    e = np.exp(-r * t)
    return np.array([
        [(b + a * e) / r, (a - a * e) / r],
        [(b - b * e) / r, (a + b * e) / r],
    ])


def tv_by_subsets(mu, nu) -> float:
    """``max_A |mu(A) - nu(A)|`` by enumerating all subsets; exponential, small n only."""
    mu = np.asarray(mu, dtype=float)
    nu = np.asarray(nu, dtype=float)
    n = mu.size
    best = 0.0
    for mask in itertools.product((False, True), repeat=n):
        m = np.array(mask)
        best = max(best, abs(mu[m].sum() - nu[m].sum()))
    return best


def stationary_by_eig(P) -> np.ndarray:
    """Left Perron vector of P via a general eigensolver."""
    vals, vecs = np.linalg.eig(np.asarray(P, dtype=float).T)
    v = np.real(vecs[:, np.argmin(np.abs(vals - 1.0))])
    return v / v.sum()


def adiabatic_product(p_initial, p_final, T: int) -> np.ndarray:
    """The matrix ``P_{1/T} ... P_1`` built as an explicit list and folded."""
    p_i = np.asarray(p_initial, dtype=float)
    p_f = np.asarray(p_final, dtype=float)
    mats = [(1 - k / T) * p_i + (k / T) * p_f for k in range(1, T + 1)]
    return reduce(np.matmul, mats)


def brute_mixing_time(P, pi, eps: float, cap: int = 100_000) -> int:
    """Least t with ``max_x ||P^t(x, .) - pi||_TV <= eps`` using fresh matrix powers."""
    P = np.asarray(P, dtype=float)
    for t in range(cap + 1):
        Pt = np.linalg.matrix_power(P, t)
        if max(0.5 * np.abs(row - pi).sum() for row in Pt) <= eps:
            return t
    raise RuntimeError("cap reached")


def fine_inhomogeneous(q_init, q_final, T: float, steps: int) -> np.ndarray:
    """Reference propagator of ``d nu/dt = nu Q[t/T]`` by midpoint exponentials from :func:`expm_taylor`."""
    q_i = np.asarray(q_init, dtype=float)
    q_f = np.asarray(q_final, dtype=float)
    h = T / steps
    M = np.eye(q_i.shape[0])
    for k in range(steps):
        s = (k + 0.5) / steps
        M = M @ expm_taylor(h * ((1 - s) * q_i + s * q_f), terms=12)
    return M
