import pytest

from anncat.bimodules import (Bimodule, bimodule_from_tables, reduction_bimodule,
                              regular_bimodule, trivial_bimodule)
from anncat.groups import FiniteAbelianGroup
from anncat.rings import cyclic_ring, dual_numbers

import numpy as np


@pytest.fixture(scope="session")
def z2():
    return cyclic_ring(2)


@pytest.fixture(scope="session")
def z3():
    return cyclic_ring(3)


@pytest.fixture(scope="session")
def z4():
    return cyclic_ring(4)


@pytest.fixture(scope="session")
def z2e():
    return dual_numbers(2)


@pytest.fixture(scope="session")
def z2_reg(z2):
    return regular_bimodule(z2)


@pytest.fixture(scope="session")
def z3_reg(z3):
    return regular_bimodule(z3)


@pytest.fixture(scope="session")
def z4_reg(z4):
    return regular_bimodule(z4)


@pytest.fixture(scope="session")
def z2e_reg(z2e):
    return regular_bimodule(z2e)


@pytest.fixture(scope="session")
def z4_z2red(z4):
    return reduction_bimodule(z4, 2)


@pytest.fixture(scope="session")
def z2_m22(z2):
    """Z2 x Z2 as a module over Z2 (the actions are forced)."""
    left = np.array([[0, 0, 0, 0], [0, 1, 2, 3]])
    right = np.array([[0, 0], [0, 1], [0, 2], [0, 3]])
    return bimodule_from_tables(z2, [2, 2], left, right, name="Z2xZ2 over Z2")


@pytest.fixture(scope="session")
def z2_m222(z2):
    """(Z2)^3 over Z2."""
    left = np.array([[0] * 8, list(range(8))])
    right = np.array([[0, i] for i in range(8)])
    return bimodule_from_tables(z2, [2, 2, 2], left, right, name="Z2^3 over Z2")


@pytest.fixture(scope="session")
def z3_triv(z3):
    return trivial_bimodule(z3)
