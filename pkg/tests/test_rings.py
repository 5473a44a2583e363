import itertools

import numpy as np
import pytest

from anncat.rings import (FiniteRing, RingAxiomError, Rng, cyclic_ring, dual_numbers,
                          null_ring, product_ring, ring_from_tables, ring_isomorphism,
                          scaled_cyclic_rng)


def test_cyclic_matches_modular_arithmetic():
    for n in (2, 3, 4, 5, 6, 7, 8):
        R = cyclic_ring(n)
        for x, y in itertools.product(range(n), repeat=2):
            assert R.a(x, y) == (x + y) % n
            assert R.m(x, y) == (x * y) % n
        assert R.unit == 1 % n


def test_cyclic2_unit():
    R = cyclic_ring(2)
    assert R.unit == 1 and R.order == 2


def test_dual_numbers_is_valid_ring():
    E = dual_numbers(2)
    assert E.order == 4
    eps = 2  # encoding a + n*b puts e at index 2
    assert E.m(eps, eps) == 0
    assert E.m(E.unit, eps) == eps


def test_nonassociative_table_rejected_with_witness():
    # modify Z4's multiplication at one spot to break associativity
    R = cyclic_ring(4)
    mul = np.array(R.mul).copy()
    mul[2, 3] = 1
    with pytest.raises(RingAxiomError) as exc:
        ring_from_tables(np.array(R.add), mul, unit=1)
    assert exc.value.axiom in ("multiplicative associativity", "left distributivity",
                               "right distributivity", "two-sided unit")
    assert len(exc.value.witness) >= 1


def test_zero_index_enforced():
    R = cyclic_ring(2)
    with pytest.raises(RingAxiomError):
        ring_from_tables(np.array(R.add), np.array(R.mul), zero=1, unit=0)


def test_unit_must_differ_from_zero():
    with pytest.raises(RingAxiomError):
        FiniteRing(2, [[0, 1], [1, 0]], [[0, 0], [0, 1]], unit=0)


def test_product_ring():
    P = product_ring(cyclic_ring(2), cyclic_ring(3))
    assert P.order == 6
    assert P.unit is not None
    assert ring_isomorphism(P, cyclic_ring(6)) is not None


def test_null_and_scaled_rngs():
    N = null_ring(3)
    assert N.unit is None
    assert all(N.m(x, y) == 0 for x in range(3) for y in range(3))
    T = scaled_cyclic_rng(2, 8)
    assert T.order == 4
    # element i is 2i in Z8: 2*2 = 4 -> index 2
    assert T.m(1, 1) == 2
    assert T.unit is None


def test_isomorphism_search():
    assert ring_isomorphism(cyclic_ring(4), product_ring(cyclic_ring(2), cyclic_ring(2))) is None
    iso = ring_isomorphism(cyclic_ring(6), product_ring(cyclic_ring(2), cyclic_ring(3)))
    assert iso is not None
    R, S = cyclic_ring(6), product_ring(cyclic_ring(2), cyclic_ring(3))
    for x, y in itertools.product(range(6), repeat=2):
        assert iso[R.a(x, y)] == S.a(iso[x], iso[y])
        assert iso[R.m(x, y)] == S.m(iso[x], iso[y])
