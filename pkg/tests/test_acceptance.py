"""Acceptance battery: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` (lines are printed either way)
or ``markov-adiabatic suite``.
"""

import pytest

from markov_adiabatic.instances import RNG_NAME
from markov_adiabatic.suite import CRITERIA, DEFAULT_SEED


@pytest.fixture(scope="module", autouse=True)
def _banner(request):
    capman = request.config.pluginmanager.getplugin("capturemanager")
    with capman.global_and_fixture_disabled():
        print(f"\nrng: {RNG_NAME} seed: {DEFAULT_SEED}")
    yield


@pytest.mark.parametrize("criterion", CRITERIA, ids=[fn.__name__ for fn in CRITERIA])
def test_criterion(criterion, capsys):
    result = criterion(DEFAULT_SEED)
    with capsys.disabled():
        print(result.line())
    assert result.passed, "\n".join(map(str, result.violations[:10]))
