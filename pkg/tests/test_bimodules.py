import itertools

import numpy as np
import pytest

from anncat.bimodules import (Bimodule, BimoduleAxiomError, additive_group_of,
                              bimodule_from_tables, pullback_bimodule,
                              reduction_bimodule, regular_bimodule, trivial_bimodule)
from anncat.groups import FiniteAbelianGroup
from anncat.rings import cyclic_ring, dual_numbers, scaled_cyclic_rng


def test_regular_actions_are_ring_multiplication(z4):
    M = regular_bimodule(z4)
    for r, m in itertools.product(range(4), repeat=2):
        assert M.to_tuple(M.act_left(r, m)) == ((z4.m(r, M.module_to_ring[m])),)


def test_regular_z2(z2, z2_reg):
    assert z2_reg.size == 2
    assert z2_reg.act_left(1, 1) == 1
    assert z2_reg.act_left(0, 1) == 0


def test_trivial_module(z3):
    M = trivial_bimodule(z3)
    assert M.size == 1
    assert M.act_left(2, 0) == 0


def test_reduction_module(z4, z4_z2red):
    # action through reduction mod 2: 2 acts as 0, 3 acts as 1
    assert z4_z2red.act_left(2, 1) == 0
    assert z4_z2red.act_left(3, 1) == 1


def test_bad_action_rejected_with_witness(z4):
    # (xy)m = x(ym) broken: left action of 2 tweaked
    M = reduction_bimodule(z4, 2)
    left = M.left.copy()
    left[2, 1] = 1  # 2 should act as 0
    with pytest.raises(BimoduleAxiomError) as exc:
        Bimodule(z4, M.group, left, M.right.copy())
    assert len(exc.value.witness) == 3


def test_additive_group_of():
    g, table = additive_group_of(scaled_cyclic_rng(2, 8))
    assert g.invariant_factors == (4,)
    g, table = additive_group_of(dual_numbers(2))
    assert g.invariant_factors == (2, 2)
    assert sorted(table) == [0, 1, 2, 3]
    g, _ = additive_group_of(cyclic_ring(12))
    assert g.invariant_factors == (12,)


def test_pullback(z4):
    target = regular_bimodule(cyclic_ring(2))
    M = pullback_bimodule([x % 2 for x in range(4)], z4, target)
    assert M.act_left(3, 1) == 1
    assert M.act_left(2, 1) == 0


def test_unit_and_zero_actions_enforced(z2):
    left = np.array([[0, 0], [0, 1]])
    right = np.array([[0, 0], [0, 1]])
    bimodule_from_tables(z2, [2], left, right)  # fine
    bad_left = np.array([[0, 1], [0, 1]])       # zero must annihilate
    with pytest.raises(BimoduleAxiomError):
        bimodule_from_tables(z2, [2], bad_left, right)
