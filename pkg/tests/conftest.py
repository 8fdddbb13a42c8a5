import pytest

pytest.register_assert_rewrite("tests.gluings")

from cyglue.lattice import Isometry
from cyglue.oguiso import oguiso_lattice, translation_pullback
from cyglue.wehler import involution_pullback, iota, power_closed_form, wehler_lattice


@pytest.fixture(scope="session")
def W():
    return wehler_lattice()


@pytest.fixture(scope="session")
def O():
    return oguiso_lattice()


@pytest.fixture
def isometries() -> list[Isometry]:
    """Every isometry the package hands out by name, with small parameters."""
    out = [involution_pullback(1, 2), involution_pullback(1, 3), involution_pullback(2, 3), iota()]
    out += [power_closed_form(a) for a in range(-3, 4)]
    out += [translation_pullback(a) for a in range(-3, 4)]
    return out
