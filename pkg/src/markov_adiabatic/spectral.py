"""Spectra, spectral gaps and relaxation times of reversible chains."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._defaults import RESIDUAL_TOL
from .chain_core import as_distribution, as_stochastic, is_reversible
from .errors import ValidationError

__all__ = ["GapSummary", "reversible_spectrum", "spectral_gap", "mixing_time_bounds", "symmetric_conjugate"]

# eigenvalues this close to +-1 count as +-1 when deciding degeneracy
_EIG_TIE = 1e-10


@dataclass(frozen=True)
class GapSummary:
    gap: float
    relaxation_time: float


def symmetric_conjugate(P, pi) -> np.ndarray:
    """``D^{1/2} P D^{-1/2}`` with ``D = diag(pi)``; symmetric when P is reversible."""
    s = np.sqrt(pi)
    return s[:, None] * P / s[None, :]


def reversible_spectrum(P, pi, tol: float = RESIDUAL_TOL) -> np.ndarray:
    """Real spectrum of a reversible chain, sorted in descending order.

    The chain is conjugated to a symmetric matrix first, so a symmetric
    eigensolver applies and the output is real by construction.
    """
    P = as_stochastic(P)
    pi = as_distribution(pi)
    if (pi <= 0).any():
        raise ValidationError("positive-stationary", "stationary distribution must be strictly positive",
                              (int(np.argmin(pi)),))
    if not is_reversible(P, pi, tol):
        raise ValidationError("detailed-balance", "chain is not reversible with respect to pi")
    S = symmetric_conjugate(P, pi)
    S = 0.5 * (S + S.T)
    return np.linalg.eigvalsh(S)[::-1]


def spectral_gap(spectrum) -> GapSummary:
    """Absolute spectral gap ``1 - max(|second largest|, |smallest|)``.

    Raises ``ValidationError`` when that maximum is 1, i.e. the chain is
    reducible or periodic.
    """
    ev = np.sort(np.asarray(spectrum, dtype=float))[::-1]
    if ev.size == 1:
        return GapSummary(1.0, 1.0)
    lam_star = max(abs(ev[1]), abs(ev[-1]))
    if lam_star >= 1.0 - _EIG_TIE:
        raise ValidationError("degenerate-spectrum",
                              f"second largest absolute eigenvalue is {lam_star:.12g}")
    gap = float(1.0 - lam_star)
    return GapSummary(gap=gap, relaxation_time=1.0 / gap)


def mixing_time_bounds(g: GapSummary, pi, eps: float) -> tuple[float, float]:
    """Lower and upper mixing-time bounds from the relaxation time.

    lower = (t_rel - 1) log(1/(2 eps)),  upper = t_rel log(1/(eps pi_min)).
    """
    if not 0.0 < eps < 0.5:
        raise ValidationError("eps-range", f"eps must lie in (0, 1/2), got {eps}")
    pi = as_distribution(pi)
    pi_min = float(pi.min())
    if pi_min <= 0:
        raise ValidationError("positive-stationary", "stationary distribution must be strictly positive")
    tau = g.relaxation_time
    lower = (tau - 1.0) * math.log(1.0 / (2.0 * eps))
    upper = tau * math.log(1.0 / (eps * pi_min))
    return lower, upper
