import itertools
import random

import numpy as np
import pytest

from anncat.cochains import (Cochain1, Cochain2, Cochain3, CochainBasis,
                             NormalizationError, delta1, delta2, free_positions)
from anncat.guards import SizeGuardError


def test_normalization_enforced(z2_reg):
    with pytest.raises(NormalizationError):
        Cochain1(z2_reg, np.array([0, 1]))
    with pytest.raises(NormalizationError):
        Cochain2(z2_reg, np.array([[1, 0], [0, 0]]), np.zeros((2, 2), dtype=np.int64))
    f = Cochain3.zero(z2_reg)
    bad = f.add_assoc.copy()
    bad[0, 1, 1] = 1
    with pytest.raises(NormalizationError):
        Cochain3(z2_reg, bad, f.add_comm, f.mul_assoc, f.dist_left, f.dist_right)


def test_delta1_zero(z3_reg):
    assert delta1(Cochain1.zero(z3_reg)).is_zero()


def test_delta1_dual_numbers_cocycle(z2e, z2e_reg):
    # the derivation sending e and 1+e to e is a 1-cocycle
    eps = 2
    to_m = z2e_reg.ring_to_module
    vals = np.zeros(4, dtype=np.int64)
    vals[eps] = to_m[eps]
    vals[3] = to_m[eps]
    a = Cochain1(z2e_reg, vals)
    assert delta1(a).is_zero()


def test_delta1_z4_example(z4, z4_reg):
    # a(2) = 2, a(3) = 0: the additive defect at (1,1) is -a(2) = 2
    to_m = z4_reg.ring_to_module
    vals = np.zeros(4, dtype=np.int64)
    vals[2] = to_m[2]
    a = Cochain1(z4_reg, vals)
    g = delta1(a)
    assert z4_reg.to_tuple(int(g.add_part[1, 1])) == (2,)


def test_delta2_zero(z4_reg):
    assert delta2(Cochain2.zero(z4_reg)).is_zero()


def test_delta2_z2_unique_nonzero(z2_reg):
    mu = np.zeros((2, 2), dtype=np.int64)
    mu[1, 1] = 1
    g = Cochain2(z2_reg, mu, np.zeros((2, 2), dtype=np.int64))
    assert delta2(g).is_zero()


@pytest.mark.parametrize("module_fixture", ["z2_reg", "z3_reg", "z4_reg", "z4_z2red", "z2e_reg"])
def test_delta_squared_zero_exhaustive(module_fixture, request):
    module = request.getfixturevalue(module_fixture)
    basis = CochainBasis(1, module)
    assert basis.order() <= 4096
    for a in basis.enumerate():
        f = delta2(delta1(a))
        assert f.is_zero()


def test_normalization_closure_random(z4_reg):
    # outputs of the differentials construct valid (normalized) cochains;
    # construction itself asserts the invariants
    rng = random.Random(0)
    b1, b2 = CochainBasis(1, z4_reg), CochainBasis(2, z4_reg)
    for _ in range(50):
        delta1(b1.random(rng))
        delta2(b2.random(rng))


def test_basis_groups(z2_reg):
    assert CochainBasis(3, z2_reg).group.invariant_factors == (2, 2)
    assert CochainBasis(2, z2_reg).group.invariant_factors == (2,)
    assert CochainBasis(1, z2_reg).group.invariant_factors == ()


def test_free_positions_z2(z2_reg):
    pos = free_positions(3, z2_reg)
    assert ("add_assoc", (1, 1, 1)) in pos
    assert ("add_comm", (1, 1)) in pos
    assert len(pos) == 2


def test_stream_enumeration_exact(z2_reg):
    b = CochainBasis(3, z2_reg)
    seen = list(b.enumerate())
    assert len(seen) == 4
    assert len({tuple(c.add_assoc.ravel().tolist() + c.add_comm.ravel().tolist())
                for c in seen}) == 4


def test_encode_decode_roundtrip(z2e_reg):
    rng = random.Random(4)
    b = CochainBasis(3, z2e_reg)
    for _ in range(20):
        vec = np.array([rng.randrange(int(m)) for m in b.moduli], dtype=np.int64)
        assert np.array_equal(b.encode(b.decode(vec)), vec)


def test_stream_guard(z2e_reg):
    b = CochainBasis(3, z2e_reg)
    with pytest.raises(SizeGuardError):
        next(iter(b.enumerate(guard=10)))


def test_flip_involutive(z4_reg):
    rng = random.Random(9)
    b = CochainBasis(3, z4_reg)
    f = b.random(rng)
    assert f.flip().flip() == f
