from __future__ import annotations

from pathlib import Path

import pytest

from pmmobility import analyze_mechanism, parse_mechanism_file

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture(scope="session")
def tricept():
    return parse_mechanism_file(FIXTURES / "tricept.mech")


@pytest.fixture(scope="session")
def three_rrc():
    return parse_mechanism_file(FIXTURES / "three_rrc.mech")


@pytest.fixture(scope="session")
def tricept_report(tricept):
    return analyze_mechanism(tricept)


@pytest.fixture(scope="session")
def three_rrc_report(three_rrc):
    return analyze_mechanism(three_rrc)
