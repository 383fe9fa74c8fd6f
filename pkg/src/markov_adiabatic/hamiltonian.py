"""Conversion between real symmetric Hamiltonians and reversible chains.

For ``H`` with ``I - H = (a_ij)`` nonnegative and primitive, let ``alpha`` be
the positive Perron vector of ``I - H`` with eigenvalue ``1 - lambda0``
(``lambda0`` is the ground energy). Then

    P_ij = alpha_j a_ij / ((1 - lambda0) alpha_i)

is a reversible chain with stationary law ``alpha**2 / |alpha|**2`` and
eigenvalues ``(1 - lambda_j) / (1 - lambda0)``. The inverse map is
``H = I - (1 - lambda0) D^{1/2} P D^{-1/2}`` with ``D = diag(pi)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._defaults import RESIDUAL_TOL, VALIDATION_TOL
from .chain_core import as_distribution, as_square, as_stochastic, is_irreducible_aperiodic, is_reversible, lazy
from .errors import NumericalError, ValidationError
from .spectral import reversible_spectrum, spectral_gap, symmetric_conjugate

__all__ = [
    "PerronPair",
    "ConversionResult",
    "validate_hamiltonian",
    "perron",
    "hamiltonian_to_chain",
    "chain_to_hamiltonian",
    "lazy_gap_relation",
]

# Perron vector entries below this signal a near-reducible input
_MIN_ALPHA = 1e-13


@dataclass(frozen=True)
class PerronPair:
    value: float
    vector: np.ndarray


@dataclass(frozen=True)
class ConversionResult:
    chain: np.ndarray
    stationary: np.ndarray
    ground_energy: float
    hamiltonian_gap: float
    chain_gap: float
    # r_1 >= |r_N|: the chain gap is then exactly hamiltonian_gap / (1 - ground_energy)
    gap_relation_applies: bool
    chain_spectrum: np.ndarray
    hamiltonian_spectrum: np.ndarray


def validate_hamiltonian(H, tol: float = VALIDATION_TOL) -> np.ndarray:
    """Return ``H`` as a float array, or raise naming the first failed condition.

    Checked in order: symmetry, nonnegativity of ``I - H``, and primitivity of
    ``I - H`` (reported as ``irreducible-aperiodic``).
    """
    H = as_square(H, "Hamiltonian")
    asym = np.abs(H - H.T)
    if asym.max() > tol:
        i, j = np.unravel_index(np.argmax(asym), asym.shape)
        raise ValidationError("symmetry", f"H[{i},{j}] != H[{j},{i}]", (int(i), int(j)))
    A = np.eye(H.shape[0]) - H
    if (A < 0).any():
        i, j = np.unravel_index(np.argmin(A), A.shape)
        raise ValidationError("nonnegative", f"(I - H)[{i},{j}] = {A[i, j]:.6g} is negative", (int(i), int(j)))
    if not is_irreducible_aperiodic(A):
        raise ValidationError("irreducible-aperiodic", "I - H is reducible or periodic")
    return H


def perron(M) -> PerronPair:
    """Dominant eigenpair of a primitive nonnegative matrix, vector positive with unit norm."""
    M = as_square(M)
    if (M < 0).any():
        raise ValidationError("negative-entry", "Perron pair needs a nonnegative matrix")
    symmetric = np.allclose(M, M.T, rtol=0, atol=VALIDATION_TOL)
    if symmetric:
        vals, vecs = np.linalg.eigh(0.5 * (M + M.T))
        value = float(vals[-1])
        vec = vecs[:, -1]
        others = np.abs(vals[:-1])
    else:
        vals, vecs = np.linalg.eig(M)
        k = int(np.argmax(vals.real))
        value = float(vals[k].real)
        vec = vecs[:, k].real
        others = np.abs(np.delete(vals, k))
    vec = vec * np.sign(vec.sum())
    vec = vec / np.linalg.norm(vec)
    scale = max(1.0, abs(value))
    resid = float(np.abs(M @ vec - value * vec).max())
    if resid > RESIDUAL_TOL * scale:
        raise NumericalError("Perron eigensolve inaccurate", resid)
    if others.size and others.max() >= value * (1 - 1e-12):
        raise ValidationError("irreducible-aperiodic", "Perron eigenvalue is not strictly dominant")
    if vec.min() < _MIN_ALPHA:
        raise ValidationError("positive-perron-vector",
                              f"Perron vector entry {vec.min():.3g} is not safely positive",
                              (int(np.argmin(vec)),))
    return PerronPair(value=value, vector=vec)


def hamiltonian_to_chain(H) -> ConversionResult:
    H = validate_hamiltonian(H)
    n = H.shape[0]
    A = np.eye(n) - H
    pp = perron(A)
    alpha = pp.vector
    top = pp.value
    P = alpha[None, :] * A / (top * alpha[:, None])
    # row sums equal 1 only up to rounding in the Perron equation; the
    # residual is far below the validation tolerance
    P = as_stochastic(P, tol=1e-10)
    pi = alpha**2
    pi = pi / pi.sum()
    h_spec = np.linalg.eigvalsh(0.5 * (H + H.T))
    lambda0 = 1.0 - top
    chain_spec = reversible_spectrum(P, pi)
    beta = spectral_gap(chain_spec).gap
    applies = n == 1 or chain_spec[1] >= abs(chain_spec[-1])
    h_gap = float(h_spec[1] - h_spec[0]) if n > 1 else 0.0
    return ConversionResult(
        chain=P,
        stationary=pi,
        ground_energy=lambda0,
        hamiltonian_gap=h_gap,
        chain_gap=beta,
        gap_relation_applies=bool(applies),
        chain_spectrum=chain_spec,
        hamiltonian_spectrum=h_spec,
    )


def chain_to_hamiltonian(P, pi, lambda0: float = 0.0) -> np.ndarray:
    """Rebuild a Hamiltonian with ground energy ``lambda0`` from a reversible chain.

    A chain alone does not fix the ground energy, hence the explicit argument.
    """
    P = as_stochastic(P)
    pi = as_distribution(pi)
    if (pi <= 0).any():
        raise ValidationError("positive-stationary", "pi must be strictly positive", (int(np.argmin(pi)),))
    if not lambda0 < 1:
        raise ValidationError("ground-energy", f"lambda0 must be < 1, got {lambda0}")
    if not is_reversible(P, pi, RESIDUAL_TOL):
        raise ValidationError("detailed-balance", "chain is not reversible with respect to pi")
    S = symmetric_conjugate(P, pi)
    H = np.eye(P.shape[0]) - (1.0 - lambda0) * 0.5 * (S + S.T)
    return validate_hamiltonian(H)


def lazy_gap_relation(H) -> tuple[float, float]:
    """Measured gap of the lazy converted chain and its predicted value ``beta_H / (2 (1 - lambda0))``."""
    conv = hamiltonian_to_chain(H)
    lazy_spec = reversible_spectrum(lazy(conv.chain), conv.stationary)
    measured = spectral_gap(lazy_spec).gap
    predicted = conv.hamiltonian_gap / (2.0 * (1.0 - conv.ground_energy))
    return measured, predicted
