"""Discrete-time adiabatic evolution along ``P_s = (1 - s) P_initial + s P_final``.

The horizon-T evolution applies ``P_{1/T}, P_{2/T}, ..., P_1`` in that order
to a row vector. The adiabatic time is the least T whose worst-case
distance to the stationary law of ``P_final`` is at most ``eps``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .chain_core import as_distribution, as_stochastic, stationary_distribution
from .errors import CapExceededError, ValidationError
from .mixing import DEFAULT_CAP, mixing_time

__all__ = [
    "AdiabaticSchedule",
    "AdiabaticReport",
    "interpolate",
    "adiabatic_evolve",
    "adiabatic_propagator",
    "adiabatic_error",
    "adiabatic_time",
    "TheoremBound",
    "theorem_bound",
    "corollary_bound",
]


@dataclass(frozen=True)
class AdiabaticSchedule:
    """Endpoints and horizon of a linear schedule.

    Primitivity of ``p_final`` is checked where its stationary law is needed
    (error and time computations), so bare interpolation works for any pair.
    """

    p_initial: np.ndarray
    p_final: np.ndarray
    horizon: int

    def __post_init__(self):
        p_i = as_stochastic(self.p_initial)
        p_f = as_stochastic(self.p_final)
        if p_i.shape != p_f.shape:
            raise ValidationError("dimension", f"initial {p_i.shape} vs final {p_f.shape}")
        if int(self.horizon) < 1 or int(self.horizon) != self.horizon:
            raise ValidationError("horizon", f"T must be a positive integer, got {self.horizon}")
        object.__setattr__(self, "p_initial", p_i)
        object.__setattr__(self, "p_final", p_f)
        object.__setattr__(self, "horizon", int(self.horizon))


@dataclass
class AdiabaticReport:
    """Outcome of an adiabatic-time scan.

    ``error_curve`` has one ``(T, error)`` row per horizon visited, in scan
    order; the last row is the measured time. ``details`` holds the bound's
    ingredients (``K``, ``t_mix_half``, ``lam``, ...).
    """

    measured_time: float
    theoretical_bound: float
    error_curve: np.ndarray
    epsilon: float
    details: dict = field(default_factory=dict)


def interpolate(sched: AdiabaticSchedule, s: float) -> np.ndarray:
    if not 0.0 <= s <= 1.0:
        raise ValidationError("s-range", f"s must lie in [0, 1], got {s}")
    return (1.0 - s) * sched.p_initial + s * sched.p_final


def _factors(p_i: np.ndarray, p_f: np.ndarray, T: int):
    for k in range(1, T + 1):
        s = k / T
        yield (1.0 - s) * p_i + s * p_f


def adiabatic_evolve(nu, sched: AdiabaticSchedule) -> np.ndarray:
    """``nu P_{1/T} P_{2/T} ... P_1`` with vector-matrix products only."""
    v = as_distribution(nu)
    if v.size != sched.p_final.shape[0]:
        raise ValidationError("dimension", f"distribution of size {v.size} vs {sched.p_final.shape[0]} states")
    for F in _factors(sched.p_initial, sched.p_final, sched.horizon):
        v = v @ F
    return v


def adiabatic_propagator(sched: AdiabaticSchedule) -> np.ndarray:
    """The full product ``P_{1/T} ... P_1``; row x is the evolution of the point mass at x."""
    return _propagator(sched.p_initial, sched.p_final, sched.horizon)


def _propagator(p_i: np.ndarray, p_f: np.ndarray, T: int) -> np.ndarray:
    M = np.eye(p_f.shape[0])
    for F in _factors(p_i, p_f, T):
        M = M @ F
    return M


def _distance_rows(M: np.ndarray, pi: np.ndarray, metric: str) -> float:
    diff = M - pi[None, :]
    if metric == "tv":
        return float(0.5 * np.abs(diff).sum(axis=1).max())
    if metric == "l2":
        return float(np.sqrt((diff**2).sum(axis=1)).max())
    raise ValidationError("metric", f"unknown metric {metric!r}")


def adiabatic_error(sched: AdiabaticSchedule, pi_final=None, metric: str = "tv") -> float:
    """Worst-case distance to the final stationary law after the horizon-T evolution.

    The worst case over all initial laws is attained at a point mass, so the
    rows of the propagator cover it.
    """
    pi = stationary_distribution(sched.p_final) if pi_final is None else as_distribution(pi_final)
    return _distance_rows(adiabatic_propagator(sched), pi, metric)


@dataclass(frozen=True)
class TheoremBound:
    K: int
    t_mix_half: int
    T_bound: int
    K_approx: float


def _weight_log(K: int, t: int) -> float:
    # log of the lower bound ((1 + 1/(K-1))^(K-1) / e)^t on the surviving weight
    m = K - 1
    return t * (m * math.log1p(1.0 / m) - 1.0)


def theorem_bound(t_mix_half: int, eps: float) -> TheoremBound:
    """Horizon guaranteed to reach ``eps`` from the final chain's ``t_mix(eps/2)``.

    K is the least integer >= 2 with
    ``1 - ((1 + 1/(K-1))^(K-1) / e)^t <= eps/2``, found by ascending search;
    the guaranteed horizon is ``K * t``. ``K_approx = t / (-2 log(1 - eps/2))``
    is the closed-form estimate, reported for comparison only.
    """
    if not 0.0 < eps < 1.0:
        raise ValidationError("eps-range", f"eps must lie in (0, 1), got {eps}")
    t = int(t_mix_half)
    if t < 1:
        raise ValidationError("t-mix", f"t_mix(eps/2) must be >= 1, got {t_mix_half}")
    target = math.log1p(-eps / 2.0)
    K = 2
    while _weight_log(K, t) < target:
        K += 1
    return TheoremBound(K=K, t_mix_half=t, T_bound=K * t, K_approx=t / (-2.0 * math.log1p(-eps / 2.0)))


def corollary_bound(beta: float, pi_min: float, eps: float) -> float:
    """Order-of-magnitude adiabatic time ``(log(2/eps) + log(1/pi_min)) / (eps beta^2)``, constant taken as 1."""
    if not 0.0 < beta <= 1.0:
        raise ValidationError("gap-range", f"beta must lie in (0, 1], got {beta}")
    if not 0.0 < pi_min < 1.0:
        raise ValidationError("pi-min-range", f"pi_min must lie in (0, 1), got {pi_min}")
    if not 0.0 < eps < 1.0:
        raise ValidationError("eps-range", f"eps must lie in (0, 1), got {eps}")
    return (math.log(2.0 / eps) + math.log(1.0 / pi_min)) / (eps * beta**2)


def adiabatic_time(p_initial, p_final, eps: float, cap: int = 10_000, metric: str = "tv",
                   with_bound: bool = True, mix_cap: int = DEFAULT_CAP) -> AdiabaticReport:
    """Least horizon T <= cap whose adiabatic error is at most ``eps``.

    The error is not known to be monotone in T, so every horizon from 1 up is
    evaluated and recorded. With ``with_bound`` the report also carries the
    guaranteed horizon from :func:`theorem_bound`.
    """
    if not 0.0 < eps < 1.0:
        raise ValidationError("eps-range", f"eps must lie in (0, 1), got {eps}")
    base = AdiabaticSchedule(p_initial, p_final, 1)
    pi = stationary_distribution(base.p_final)
    curve = []
    for T in range(1, cap + 1):
        err = _distance_rows(_propagator(base.p_initial, base.p_final, T), pi, metric)
        curve.append((T, err))
        if err <= eps:
            break
    else:
        raise CapExceededError(f"adiabatic error above eps={eps} for all T <= {cap}", curve[-1][1],
                               np.array(curve))
    details = {}
    bound = float("nan")
    if with_bound:
        t_half = mixing_time(base.p_final, eps / 2.0, cap=mix_cap, pi=pi)
        tb = theorem_bound(t_half, eps)
        bound = float(tb.T_bound)
        details = {"K": tb.K, "t_mix_half": tb.t_mix_half, "K_approx": tb.K_approx}
    return AdiabaticReport(measured_time=T, theoretical_bound=bound, error_curve=np.array(curve),
                           epsilon=eps, details=details)
