import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from cochains import cyclic, symmetric  # noqa: E402
from complexes import complete_complex, complete_partite_complex  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: enumerates large cochain spaces or lattices")


@pytest.fixture
def z2():
    return cyclic(2)


@pytest.fixture
def z3():
    return cyclic(3)


@pytest.fixture
def s3():
    return symmetric(3)


@pytest.fixture
def triangle():
    return complete_complex(3, 1)


@pytest.fixture
def k6_2():
    return complete_complex(6, 2)


@pytest.fixture
def partite4():
    return complete_partite_complex([2, 2, 2, 2])
