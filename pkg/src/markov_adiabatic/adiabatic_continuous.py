"""Continuous-time adiabatic evolution under ``Q[s] = (1 - s) Q_initial + s Q_final``.

The law evolves by ``d nu/dt = nu Q[t/T]`` on ``[0, T]``. Integration splits
the interval into equal substeps, freezes the generator at each substep's
midpoint and applies the exact uniformized transition matrix of that
frozen generator. Each substep is a stochastic matrix, so the result never
leaves the simplex, and the scheme is second order in the substep length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._defaults import SERIES_TOL
from .adiabatic_discrete import AdiabaticReport
from .chain_core import as_distribution
from .ctmc import (
    UniformizedChain,
    _series,
    as_generator,
    generator_stationary,
    max_departure_rate,
    poisson_weights,
    transition_matrix,
    uniformize,
)
from .errors import CapExceededError, NumericalError, ValidationError
from .mixing import worst_case_tv_rows, mixing_time_continuous

__all__ = [
    "UniformizedChain",
    "uniformize",
    "transition_matrix",
    "interpolate_generator",
    "evolve_inhomogeneous",
    "inhomogeneous_propagator",
    "default_steps",
    "adiabatic_time_continuous",
    "Theorem43Bound",
    "theorem43_bound",
]

# substep size policy: lambda * h <= this
DEFAULT_LAMBDA_STEP = 0.1


def interpolate_generator(q_init, q_final, s: float) -> np.ndarray:
    if not 0.0 <= s <= 1.0:
        raise ValidationError("s-range", f"s must lie in [0, 1], got {s}")
    q_init = as_generator(q_init)
    q_final = as_generator(q_final)
    if q_init.shape != q_final.shape:
        raise ValidationError("dimension", f"generators {q_init.shape} and {q_final.shape} differ")
    return (1.0 - s) * q_init + s * q_final


def default_steps(lam: float, T: float, lambda_step: float = DEFAULT_LAMBDA_STEP) -> int:
    return max(1, math.ceil(lam * T / lambda_step - 1e-9))


def _pair(q_init, q_final):
    q_init = as_generator(q_init)
    q_final = as_generator(q_final)
    if q_init.shape != q_final.shape:
        raise ValidationError("dimension", f"generators {q_init.shape} and {q_final.shape} differ")
    return q_init, q_final


def _propagator(q_i: np.ndarray, q_f: np.ndarray, T: float, steps: int, lam: float,
                tol: float) -> np.ndarray:
    n = q_i.shape[0]
    if T == 0 or lam == 0:
        return np.eye(n)
    h = T / steps
    mids = (np.arange(steps) + 0.5) / steps
    # every substep shares lambda and h, hence one set of Poisson weights
    weights = poisson_weights(lam * h, tol)
    jumps = np.eye(n)[None] + ((1.0 - mids)[:, None, None] * q_i + mids[:, None, None] * q_f) / lam
    jumps[jumps < 0] = 0.0
    stack = _series(jumps, weights)
    # ordered product stack[0] @ stack[1] @ ... by pairwise reduction
    while stack.shape[0] > 1:
        if stack.shape[0] % 2:
            tail = stack[-1:]
            stack = np.concatenate([stack[:-2:2] @ stack[1:-1:2], tail])
        else:
            stack = stack[0::2] @ stack[1::2]
    return stack[0]


def inhomogeneous_propagator(q_init, q_final, T: float, steps: int | None = None,
                             lam: float | None = None, tol: float = SERIES_TOL) -> np.ndarray:
    """Transition matrix ``P_T(0, T)`` of the adiabatic process; row x evolves the point mass at x."""
    q_i, q_f = _pair(q_init, q_final)
    if T < 0:
        raise ValidationError("time-range", f"T must be nonnegative, got {T}")
    lam = _admissible_lambda(q_i, q_f, lam)
    if steps is None:
        steps = default_steps(lam, T)
    if steps < 1:
        raise ValidationError("steps", f"steps must be >= 1, got {steps}")
    return _propagator(q_i, q_f, T, int(steps), lam, tol)


def evolve_inhomogeneous(nu, q_init, q_final, T: float, steps: int | None = None,
                         lam: float | None = None, tol: float = SERIES_TOL) -> np.ndarray:
    """Solve ``d nu/dt = nu Q[t/T]`` on ``[0, T]`` with midpoint-frozen substeps."""
    nu = as_distribution(nu)
    M = inhomogeneous_propagator(q_init, q_final, T, steps, lam, tol)
    if nu.size != M.shape[0]:
        raise ValidationError("dimension", f"distribution of size {nu.size} vs {M.shape[0]} states")
    out = nu @ M
    out[out < 0] = 0.0
    return out / out.sum()


def _admissible_lambda(q_i: np.ndarray, q_f: np.ndarray, lam: float | None) -> float:
    floor = max(max_departure_rate(q_i), max_departure_rate(q_f))
    if lam is None:
        return floor
    if lam < floor * (1 - 1e-12):
        raise ValidationError("uniformization-rate", f"lambda={lam} below departure rate {floor:.6g}")
    return float(lam)


@dataclass(frozen=True)
class Theorem43Bound:
    lam: float
    t_mix_half: float
    K: float
    T_bound: float


def theorem43_bound(q_init, q_final, eps: float, t_cap: float = 1e3,
                    resolution: float = 1e-3) -> Theorem43Bound:
    """Guaranteed continuous adiabatic time ``lam * t_mix(eps/2)**2 / eps``.

    ``lam`` is the largest of the two departure-rate bounds and
    ``eps / (2 t_mix(eps/2)) + 1``. The mixing time is the grid value from
    :func:`mixing_time_continuous`, which can only overshoot.
    """
    if not 0.0 < eps < 1.0:
        raise ValidationError("eps-range", f"eps must lie in (0, 1), got {eps}")
    q_i, q_f = _pair(q_init, q_final)
    pi_f = generator_stationary(q_f)
    t_half = mixing_time_continuous(q_f, eps / 2.0, t_cap=t_cap, resolution=resolution, pi=pi_f)
    if t_half <= 0:
        raise ValidationError("t-mix", "final chain starts within eps/2 of stationarity; the bound is vacuous")
    lam = max(max_departure_rate(q_i), max_departure_rate(q_f), eps / (2.0 * t_half) + 1.0)
    K = lam * t_half / eps
    # the argument also needs lam (1 - 1/(2K)) >= 1
    if K < lam / (2.0 * (lam - 1.0)) * (1 - 1e-12):
        raise NumericalError(f"bound conditions inconsistent: K={K:.6g}, lambda={lam:.6g}")
    return Theorem43Bound(lam=lam, t_mix_half=t_half, K=K, T_bound=lam * t_half**2 / eps)


def adiabatic_time_continuous(q_init, q_final, eps: float, T_cap: float = 1e3, grid: float = 1e-2,
                              steps: int | None = None, lam: float | None = None,
                              lambda_step: float = DEFAULT_LAMBDA_STEP, with_bound: bool = True,
                              resolution: float | None = None) -> AdiabaticReport:
    """Least grid horizon ``k * grid`` whose worst-case error is at most ``eps``.

    ``steps`` fixes the number of substeps for every horizon; by default it is
    chosen per horizon so that ``lam * h <= lambda_step``. ``lam`` defaults
    to the bound's rate when ``with_bound`` is set, else to the larger
    departure rate. ``resolution`` is the mixing-time grid for the bound
    (default ``grid / 10``).
    """
    if not 0.0 < eps < 1.0:
        raise ValidationError("eps-range", f"eps must lie in (0, 1), got {eps}")
    if grid <= 0:
        raise ValidationError("grid", "grid must be positive")
    q_i, q_f = _pair(q_init, q_final)
    pi_f = generator_stationary(q_f)
    bound = None
    if with_bound:
        bound = theorem43_bound(q_i, q_f, eps, t_cap=T_cap,
                                resolution=grid / 10.0 if resolution is None else resolution)
        if lam is None:
            lam = bound.lam
    lam = _admissible_lambda(q_i, q_f, lam)
    curve = []
    k_cap = int(math.floor(T_cap / grid + 1e-9))
    for k in range(1, k_cap + 1):
        T = k * grid
        n_steps = steps if steps is not None else default_steps(lam, T, lambda_step)
        err = worst_case_tv_rows(_propagator(q_i, q_f, T, n_steps, lam, SERIES_TOL), pi_f)
        curve.append((T, err))
        if err <= eps:
            break
    else:
        last = curve[-1][1] if curve else float("nan")
        raise CapExceededError(f"adiabatic error above eps={eps} for all T <= {T_cap}", last, np.array(curve))
    details = {"lam_sim": lam}
    theoretical = float("nan")
    if bound is not None:
        theoretical = bound.T_bound
        details.update(lam=bound.lam, t_mix_half=bound.t_mix_half, K=bound.K)
    return AdiabaticReport(measured_time=T, theoretical_bound=theoretical, error_curve=np.array(curve),
                           epsilon=eps, details=details)
