"""Default tolerances, overridable through environment variables.

MARKOV_ADIABATIC_VALIDATION_TOL   validation of stochasticity/symmetry (1e-12)
MARKOV_ADIABATIC_RESIDUAL_TOL     fixed-point and eigen residuals (1e-10)
MARKOV_ADIABATIC_SERIES_TOL       uniformization tail mass (1e-12)

Values are read once, at import time.
"""

import os


def _env_float(name: str, default: float) -> float:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    return float(raw)


VALIDATION_TOL = _env_float("MARKOV_ADIABATIC_VALIDATION_TOL", 1e-12)
RESIDUAL_TOL = _env_float("MARKOV_ADIABATIC_RESIDUAL_TOL", 1e-10)
SERIES_TOL = _env_float("MARKOV_ADIABATIC_SERIES_TOL", 1e-12)
# entries in (-CLAMP_TOL, 0) are rounding noise and get zeroed
CLAMP_TOL = 1e-12
