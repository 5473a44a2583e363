import itertools
import random

import numpy as np
import pytest

from anncat.cochains import Cochain2, Cochain3, CochainBasis, delta2, ctx_of
from anncat.relations import (REGULARITY, is_ann_structure, is_cocycle3,
                              relation_residuals)


def eta_indicator(module):
    f = Cochain3.zero(module)
    f.add_comm = f.add_comm.copy()
    f.add_comm[1, 1] = 1
    return f


def zeta_indicator(module):
    f = Cochain3.zero(module)
    f.add_assoc = f.add_assoc.copy()
    f.add_assoc[1, 1, 1] = 1
    return f


def test_zero_passes(z2_reg):
    assert is_ann_structure(Cochain3.zero(z2_reg)).ok
    assert is_cocycle3(Cochain3.zero(z2_reg)).ok


def test_eta_indicator_relation9(z2_reg):
    rep = is_ann_structure(eta_indicator(z2_reg))
    assert rep.relations_hit() == {9}
    first = rep.violations[0]
    assert first.relation == 9 and first.args == (1, 1, 1, 1)
    assert first.residual == (1,)   # -eta(1,1) over Z2


def test_zeta_indicator_relation3(z2_reg):
    rep = is_ann_structure(zeta_indicator(z2_reg))
    assert rep.relations_hit() == {3}
    assert rep.violations[0].args == (1, 1, 1)
    assert rep.violations[0].residual == (1,)


def test_regularity_reported_as_relation_18(z2_reg):
    rep = is_cocycle3(eta_indicator(z2_reg))
    assert REGULARITY in rep.relations_hit()


@pytest.mark.parametrize("module_fixture,exhaustive",
                         [("z2_reg", True), ("z3_reg", True), ("z2_m22", True),
                          ("z4_reg", False), ("z4_z2red", False), ("z2e_reg", False)])
def test_coboundaries_are_cocycles(module_fixture, exhaustive, request):
    module = request.getfixturevalue(module_fixture)
    basis = CochainBasis(2, module)
    if exhaustive:
        assert basis.order() <= 4096
        gs = basis.enumerate()
    else:
        rng = random.Random(123)
        gs = (basis.random(rng) for _ in range(300))
    for g in gs:
        f = delta2(g)
        assert is_cocycle3(f, find_first=True).ok
        assert is_ann_structure(f.flip(), find_first=True).ok


def test_hochschild_reduction_z3(z3_reg):
    """With the three additive/distributive components zero, the valid
    structures are exactly those with vanishing commutator defect whose
    multiplicative component satisfies relations 13-15."""
    module = z3_reg
    n = 3
    nz = [1, 2]
    eta_positions = list(itertools.product(nz, nz))
    full, reduced = set(), set()
    for eta_vals in itertools.product(range(3), repeat=4):
        for alpha_val in range(3):
            f = Cochain3.zero(module)
            f.add_comm = f.add_comm.copy()
            for (x, y), v in zip(eta_positions, eta_vals):
                f.add_comm[x, y] = v
            f.mul_assoc = f.mul_assoc.copy()
            f.mul_assoc[2, 2, 2] = alpha_val
            key = eta_vals + (alpha_val,)
            if is_ann_structure(f, find_first=True).ok:
                full.add(key)
            flat = relation_residuals(f.flip(), relations=(13, 14, 15), find_first=True)
            if flat.ok and not any(eta_vals):
                reduced.add(key)
    assert full == reduced
    assert all(k[:4] == (0, 0, 0, 0) for k in full)
    assert (0, 0, 0, 0, 0) in full


def test_two_eta_diagonal_always_vanishes(z4_reg):
    """Relation 4 at symmetric evaluation: the diagonal of the commutativity
    defect is 2-torsion-free zero for any structure."""
    rng = random.Random(5)
    b2 = CochainBasis(2, z4_reg)
    for _ in range(100):
        s = delta2(b2.random(rng)).flip()
        if not is_ann_structure(s, find_first=True).ok:
            continue
        n = z4_reg.ring.order
        diag = s.add_comm[np.arange(n), np.arange(n)]
        doubled = {int(z4_reg.madd[v, v]) for v in diag}
        assert doubled == {0}


def test_two_eta_pointwise_counterexample(z4_reg):
    """An explicit structure whose commutativity defect has an order-4 entry:
    the blanket pointwise claim 2*eta = 0 is genuinely false."""
    mu = np.zeros((4, 4), dtype=np.int64)
    mu[1, 2] = z4_reg.ring_to_module[1]
    g = Cochain2(z4_reg, mu, np.zeros((4, 4), dtype=np.int64))
    s = delta2(g).flip()
    assert is_ann_structure(s).ok
    vals = {int(v) for v in s.add_comm.ravel()}
    m = z4_reg
    assert any(m.madd[v, v] != 0 for v in vals)


def test_report_sorted(z2_reg):
    f = eta_indicator(z2_reg)
    f.add_assoc = f.add_assoc.copy()
    f.add_assoc[1, 1, 1] = 1
    rep = is_ann_structure(f)
    keys = [(v.relation, v.args) for v in rep.violations]
    assert keys == sorted(keys)
