"""Mixing times, Hamiltonian/chain conversion and adiabatic times of finite Markov chains."""

from .adiabatic_continuous import (
    adiabatic_time_continuous,
    evolve_inhomogeneous,
    interpolate_generator,
    theorem43_bound,
)
from .adiabatic_discrete import (
    AdiabaticReport,
    AdiabaticSchedule,
    adiabatic_error,
    adiabatic_evolve,
    adiabatic_time,
    corollary_bound,
    interpolate,
    theorem_bound,
)
from .chain_core import (
    is_irreducible_aperiodic,
    is_reversible,
    lazy,
    stationary_distribution,
    tv_distance,
)
from .ctmc import transition_matrix, uniformize
from .errors import CapExceededError, MarkovError, NumericalError, ValidationError
from .hamiltonian import chain_to_hamiltonian, hamiltonian_to_chain, lazy_gap_relation, perron, validate_hamiltonian
from .mixing import mixing_time, mixing_time_continuous, worst_case_tv
from .spectral import GapSummary, mixing_time_bounds, reversible_spectrum, spectral_gap

__version__ = "0.1.0"
