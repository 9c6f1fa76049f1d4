import json
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "scripts"))

from cantor import make_asymmetric, make_symmetric  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def expected():
    with open(FIXTURES / "expected_output.json") as f:
        return json.load(f)


@pytest.fixture
def middle_third():
    return make_symmetric(Fraction(1, 3))


@pytest.fixture
def middle_quarter():
    return make_symmetric(Fraction(1, 4))


@pytest.fixture
def common_base_pair():
    return make_asymmetric(Fraction(1, 25), Fraction(1, 5))
