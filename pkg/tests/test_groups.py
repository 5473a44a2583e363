import itertools
import random

import pytest

from anncat.groups import (FiniteAbelianGroup, GroupHom, canonical_invariants,
                           subquotient)


def test_canonical_invariants():
    assert canonical_invariants([2, 3]) == (6,)
    assert canonical_invariants([4, 2]) == (2, 4)
    assert canonical_invariants([1, 1]) == ()
    assert canonical_invariants([2, 4, 8]) == (2, 4, 8)
    assert canonical_invariants([6, 4]) == (2, 12)


def test_group_basics():
    G = FiniteAbelianGroup((2, 4))
    assert G.order == 8
    assert G.add((1, 3), (1, 2)) == (0, 1)
    assert G.neg((1, 3)) == (1, 1)
    assert G.element_order((0, 2)) == 2
    assert list(G.elements())[0] == (0, 0)
    with pytest.raises(ValueError):
        FiniteAbelianGroup((4, 2))
    with pytest.raises(ValueError):
        FiniteAbelianGroup((1, 2))


def test_hom_well_definedness():
    Z4 = FiniteAbelianGroup((4,))
    Z2 = FiniteAbelianGroup((2,))
    GroupHom(Z4, Z2, [[1]])      # reduction: fine
    GroupHom(Z2, Z4, [[2]])      # doubling: fine
    with pytest.raises(ValueError):
        GroupHom(Z2, Z4, [[1]])  # 2*1 != 0 in Z4


def test_hom_additivity_sampled():
    rng = random.Random(5)
    Z6 = FiniteAbelianGroup((6,))
    Z12 = FiniteAbelianGroup((2, 12))
    h = GroupHom(Z6, Z12, [[0], [2]])
    for _ in range(50):
        a = (rng.randrange(6),)
        b = (rng.randrange(6),)
        assert h.apply(Z6.add(a, b)) == Z12.add(h.apply(a), h.apply(b))


def test_subquotient_spec_examples():
    Z2 = FiniteAbelianGroup((2,))
    Z4 = FiniteAbelianGroup((4,))
    triv = FiniteAbelianGroup(())
    # h = 0 on Z2, k = 0: quotient is Z2
    sq = subquotient(GroupHom.zero(Z2, triv), GroupHom.zero(triv, Z2))
    assert sq.group.invariant_factors == (2,)
    # h identity on Z2: trivial
    sq = subquotient(GroupHom(Z2, Z2, [[1]]), GroupHom.zero(triv, Z2))
    assert sq.group.order == 1
    # Z4 --mod2--> Z2 with doubling image: trivial quotient
    sq = subquotient(GroupHom(Z4, Z2, [[1]]), GroupHom(Z2, Z4, [[2]]))
    assert sq.group.order == 1


def test_subquotient_rejects_nonzero_composite():
    Z2 = FiniteAbelianGroup((2,))
    with pytest.raises(ValueError, match="witness"):
        subquotient(GroupHom(Z2, Z2, [[1]]), GroupHom(Z2, Z2, [[1]]))


def brute_hom_image(h):
    img = set()
    for x in h.domain.elements():
        img.add(h.apply(x))
    return img


def brute_hom_kernel(h):
    return {x for x in h.domain.elements() if not any(h.apply(x))}


def test_subquotient_order_brute_force():
    rng = random.Random(11)
    shapes = [(2,), (4,), (2, 2), (2, 4), (6,), (2, 6), (3,), (8,)]
    for _ in range(60):
        dom = FiniteAbelianGroup(rng.choice(shapes))
        cod = FiniteAbelianGroup(rng.choice(shapes))
        mid = FiniteAbelianGroup(rng.choice(shapes))
        # random well-defined h: scale columns appropriately
        def random_hom(a, b):
            mat = []
            for e in b.invariant_factors:
                row = []
                for d in a.invariant_factors:
                    step = e // __import__("math").gcd(d, e)
                    row.append(step * rng.randrange(max(1, e // step)))
                mat.append(row)
            return GroupHom(a, b, mat)
        h = random_hom(dom, cod)
        # k must land inside ker h: easiest valid choice is k = 0
        k = GroupHom.zero(mid, dom)
        sq = subquotient(h, k)
        assert sq.group.order == len(brute_hom_kernel(h))
        # representatives are in the kernel, distinct, lexicographically least
        reps = dict(sq.representatives())
        assert len(set(reps.values())) == sq.group.order
        for el, rep in reps.items():
            assert rep in brute_hom_kernel(h)
        if sq.group.order:
            assert reps.get(sq.group.zero()) == dom.zero()


def test_subquotient_nontrivial_quotient():
    Z8 = FiniteAbelianGroup((8,))
    triv = FiniteAbelianGroup(())
    # ker(0)/im(multiplication by 4 from Z2): Z8 / {0,4} = Z4
    Z2 = FiniteAbelianGroup((2,))
    sq = subquotient(GroupHom.zero(Z8, triv), GroupHom(Z2, Z8, [[4]]))
    assert sq.group.invariant_factors == (4,)
    # the section picks the least representative of each coset
    reps = dict(sq.representatives())
    assert all(rep[0] < 4 for rep in reps.values())
