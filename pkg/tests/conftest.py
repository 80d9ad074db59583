import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from zetascape import ZETA, find_real_criticals, find_unreal_criticals, find_zeros


@pytest.fixture(scope="session")
def real_criticals():
    return find_real_criticals(ZETA, -20.0, 0.0)


@pytest.fixture(scope="session")
def unreal_criticals():
    return find_unreal_criticals(ZETA, 20.0, 100.0)


@pytest.fixture(scope="session")
def zeros_to_100():
    return find_zeros(ZETA, 0.0, 100.0)
