import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ecat.vbase import bool_base, builtin_base, cost_base


@pytest.fixture(scope="session")
def boolb():
    return bool_base()


@pytest.fixture(scope="session")
def cost3():
    return cost_base(3)


@pytest.fixture(scope="session")
def cost5():
    return cost_base(5)


@pytest.fixture(scope="session")
def finset2():
    return builtin_base("finset", k=2)


@pytest.fixture(scope="session")
def finset3():
    return builtin_base("finset", k=3)
