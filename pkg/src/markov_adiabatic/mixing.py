"""Exact mixing times from the worst-case total-variation distance.

The worst case over all initial distributions is taken over point masses only:
``nu -> ||nu P^t - pi||_TV`` is convex, so its maximum over the simplex sits
at a vertex.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chain_core import as_distribution, as_stochastic, stationary_distribution
from .ctmc import as_generator, generator_stationary, max_departure_rate, transition_matrix
from .errors import CapExceededError, ValidationError

__all__ = [
    "MixingCurve",
    "worst_case_tv_rows",
    "worst_case_tv",
    "mixing_time",
    "mixing_curve",
    "mixing_time_continuous",
]

DEFAULT_CAP = 10**6
DEFAULT_T_CAP = 1e3


@dataclass(frozen=True)
class MixingCurve:
    times: np.ndarray
    distances: np.ndarray


def worst_case_tv_rows(M: np.ndarray, pi: np.ndarray) -> float:
    """Largest TV distance between a row of ``M`` and ``pi``."""
    return float(0.5 * np.abs(M - pi[None, :]).sum(axis=1).max())


def worst_case_tv(P, t: int, pi=None) -> float:
    """``max_x ||delta_x P^t - pi||_TV``."""
    if t < 0:
        raise ValidationError("time-range", f"t must be nonnegative, got {t}")
    P = as_stochastic(P)
    pi = stationary_distribution(P) if pi is None else as_distribution(pi)
    return worst_case_tv_rows(np.linalg.matrix_power(P, int(t)), pi)


def _scan(P: np.ndarray, pi: np.ndarray, eps: float, cap: int, record: bool):
    M = np.eye(P.shape[0])
    d = worst_case_tv_rows(M, pi)
    dists = [d]
    t = 0
    while d > eps:
        if t >= cap:
            raise CapExceededError(f"distance above eps={eps} after {cap} steps", d,
                                   np.array(dists) if record else None)
        M = M @ P
        t += 1
        d = worst_case_tv_rows(M, pi)
        if record:
            dists.append(d)
    return t, dists


def mixing_time(P, eps: float, cap: int = DEFAULT_CAP, pi=None) -> int:
    """Least t with worst-case TV distance at most ``eps``, by linear scan from t = 0."""
    if not 0.0 < eps < 1.0:
        raise ValidationError("eps-range", f"eps must lie in (0, 1), got {eps}")
    P = as_stochastic(P)
    if pi is None:
        try:
            pi = stationary_distribution(P)
        except ValidationError:
            # reducible chains still get a cap error below rather than a crash here
            pi = stationary_distribution(P, check=False)
    t, _ = _scan(P, as_distribution(pi), eps, cap, record=False)
    return t


def mixing_curve(P, t_max: int, pi=None) -> MixingCurve:
    """Worst-case distance d(t) for t = 0..t_max."""
    P = as_stochastic(P)
    pi = stationary_distribution(P) if pi is None else as_distribution(pi)
    M = np.eye(P.shape[0])
    out = np.empty(t_max + 1)
    for t in range(t_max + 1):
        out[t] = worst_case_tv_rows(M, pi)
        M = M @ P
    return MixingCurve(np.arange(t_max + 1), out)


def mixing_time_continuous(Q, eps: float, t_cap: float = DEFAULT_T_CAP,
                           resolution: float | None = None, pi=None) -> float:
    """Least grid time ``k * resolution`` with worst-case TV distance at most ``eps``.

    The grid answer overestimates the true continuous mixing time by less
    than ``resolution``. Grid points are reached by repeated multiplication
    with the one-step transition matrix ``P(resolution)``.
    """
    if not 0.0 < eps < 1.0:
        raise ValidationError("eps-range", f"eps must lie in (0, 1), got {eps}")
    Q = as_generator(Q)
    if resolution is None:
        resolution = 1e-3 * t_cap
    if resolution <= 0:
        raise ValidationError("resolution", "resolution must be positive")
    if pi is None:
        pi = generator_stationary(Q, check=False)
    pi = as_distribution(pi)
    n = Q.shape[0]
    M = np.eye(n)
    d = worst_case_tv_rows(M, pi)
    if d <= eps:
        return 0.0
    lam = max(max_departure_rate(Q), 1e-300)
    step = transition_matrix(Q, resolution, lam)
    k = 0
    k_cap = int(np.floor(t_cap / resolution + 1e-9))
    while d > eps:
        if k >= k_cap:
            raise CapExceededError(f"distance above eps={eps} by t={t_cap}", d)
        M = M @ step
        k += 1
        d = worst_case_tv_rows(M, pi)
    return k * resolution
