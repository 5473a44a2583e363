"""Bimodules over finite rings: a finite abelian group with exhaustively
validated left and right ring actions, stored as index tables.

Module elements are addressed by their lexicographic index in the canonical
invariant-factor enumeration; the group view (tuples) is available through
`group`, `to_tuple`, `from_tuple`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .groups import FiniteAbelianGroup
from .rings import FiniteRing, Rng


class BimoduleAxiomError(ValueError):
    def __init__(self, axiom: str, witness: tuple):
        super().__init__(f"{axiom} fails at {witness}")
        self.axiom = axiom
        self.witness = witness


@dataclass
class Bimodule:
    ring: FiniteRing
    group: FiniteAbelianGroup
    left: np.ndarray    # left[r, m] -> index of r.m
    right: np.ndarray   # right[m, r] -> index of m.r
    name: str = ""

    madd: np.ndarray = field(init=False, repr=False)
    mneg: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        n, size = self.ring.order, self.group.order
        self.left = np.asarray(self.left, dtype=np.int64)
        self.right = np.asarray(self.right, dtype=np.int64)
        if self.left.shape != (n, size) or self.right.shape != (size, n):
            raise BimoduleAxiomError("action table shape", (self.left.shape, self.right.shape))
        els = list(self.group.elements())
        index = {e: i for i, e in enumerate(els)}
        madd = np.zeros((size, size), dtype=np.int64)
        for i, a in enumerate(els):
            for j, b in enumerate(els):
                madd[i, j] = index[self.group.add(a, b)]
        self.madd = madd
        self.mneg = np.array([index[self.group.neg(a)] for a in els], dtype=np.int64)
        self._elements = els
        self._index = index
        self.validate()

    @property
    def size(self) -> int:
        return self.group.order

    def to_tuple(self, idx: int) -> tuple[int, ...]:
        return self._elements[idx]

    def from_tuple(self, t) -> int:
        return self._index[tuple(int(x) % d for x, d in zip(t, self.group.invariant_factors))]

    def act_left(self, r: int, m: int) -> int:
        return int(self.left[r, m])

    def act_right(self, m: int, r: int) -> int:
        return int(self.right[m, r])

    def add(self, a: int, b: int) -> int:
        return int(self.madd[a, b])

    def neg(self, a: int) -> int:
        return int(self.mneg[a])

    def validate(self):
        R, n, size = self.ring, self.ring.order, self.group.order
        left, right, madd = self.left, self.right, self.madd
        if size and (left.min(initial=0) < 0 or left.max(initial=0) >= size or
                     right.min(initial=0) < 0 or right.max(initial=0) >= size):
            raise BimoduleAxiomError("action table range", ())
        for x, m1, m2 in itertools.product(range(n), range(size), range(size)):
            if left[x, madd[m1, m2]] != madd[left[x, m1], left[x, m2]]:
                raise BimoduleAxiomError("left action additive in module", (x, m1, m2))
            if right[madd[m1, m2], x] != madd[right[m1, x], right[m2, x]]:
                raise BimoduleAxiomError("right action additive in module", (m1, m2, x))
        for x, y, m in itertools.product(range(n), range(n), range(size)):
            if left[R.a(x, y), m] != madd[left[x, m], left[y, m]]:
                raise BimoduleAxiomError("left action additive in ring", (x, y, m))
            if right[m, R.a(x, y)] != madd[right[m, x], right[m, y]]:
                raise BimoduleAxiomError("right action additive in ring", (x, y, m))
            if left[R.m(x, y), m] != left[x, left[y, m]]:
                raise BimoduleAxiomError("(xy)m = x(ym)", (x, y, m))
            if right[m, R.m(x, y)] != right[right[m, x], y]:
                raise BimoduleAxiomError("m(xy) = (mx)y", (x, y, m))
        for x, m, y in itertools.product(range(n), range(size), range(n)):
            if right[left[x, m], y] != left[x, right[m, y]]:
                raise BimoduleAxiomError("(xm)y = x(my)", (x, m, y))
        u = R.unit
        for m in range(size):
            if left[u, m] != m or right[m, u] != m:
                raise BimoduleAxiomError("unit acts as identity", (m,))
            if left[0, m] != 0 or right[m, 0] != 0:
                raise BimoduleAxiomError("zero annihilates", (m,))

    def __repr__(self):
        return f"<bimodule {self.name or self.group} over {self.ring.name or self.ring.order}>"


def regular_bimodule(ring: FiniteRing) -> Bimodule:
    """The ring acting on its own additive group by multiplication."""
    n = ring.order
    group, to_ring = additive_group_of(ring)
    ring_of = {to_ring[i]: i for i in range(n)}
    left = np.zeros((n, n), dtype=np.int64)
    right = np.zeros((n, n), dtype=np.int64)
    for r in range(n):
        for m in range(n):
            left[r, m] = ring_of[ring.m(r, to_ring[m])]
            right[m, r] = ring_of[ring.m(to_ring[m], r)]
    bm = Bimodule(ring, group, left, right, name=f"regular({ring.name or n})")
    bm.module_to_ring = to_ring
    bm.ring_to_module = ring_of
    return bm


def trivial_bimodule(ring: FiniteRing) -> Bimodule:
    group = FiniteAbelianGroup(())
    return Bimodule(ring, group, np.zeros((ring.order, 1), dtype=np.int64),
                    np.zeros((1, ring.order), dtype=np.int64), name="0")


def bimodule_from_tables(ring, invariant_factors, left, right, name="") -> Bimodule:
    group = FiniteAbelianGroup.from_factors(invariant_factors)
    return Bimodule(ring, group, left, right, name=name)


def pullback_bimodule(hom_table, source_ring: FiniteRing, target: Bimodule, name="") -> Bimodule:
    """Restrict a bimodule along a ring homomorphism given by an index table."""
    n = source_ring.order
    left = np.zeros((n, target.size), dtype=np.int64)
    right = np.zeros((target.size, n), dtype=np.int64)
    for r in range(n):
        fr = int(hom_table[r])
        left[r] = target.left[fr]
        right[:, r] = target.right[:, fr]
    return Bimodule(source_ring, target.group, left, right,
                    name=name or f"{target.name}|pullback")


def reduction_bimodule(ring: FiniteRing, modulus: int) -> Bimodule:
    """Z_modulus as a bimodule over a cyclic ring acting through reduction."""
    hom = [x % modulus for x in range(ring.order)]
    from .rings import cyclic_ring
    target = regular_bimodule(cyclic_ring(modulus))
    return pullback_bimodule(hom, ring, target, name=f"Z{modulus} via reduction")


def additive_group_of(rng: Rng) -> tuple[FiniteAbelianGroup, list[int]]:
    """Canonical form of (rng, +) and the element of each lexicographic index.

    Classic decomposition: split off a cyclic subgroup of maximal order,
    recurse on the quotient, and adjust lifted generators so their order
    matches their order in the quotient (always possible since the maximal
    order is the exponent).
    """
    n = rng.order

    def times(k, x):
        acc = 0
        for _ in range(k):
            acc = rng.a(acc, x)
        return acc

    def order_in(x, subgroup):
        k, acc = 1, x
        while acc not in subgroup:
            acc = rng.a(acc, x)
            k += 1
        return k

    def span(gens_orders):
        out = {0}
        for g, e in gens_orders:
            out = {rng.a(h, times(c, g)) for h in out for c in range(e)}
        return out

    gens: list[tuple[int, int]] = []   # (generator, order), decreasing orders
    while len(span(gens)) < n:
        H = span(gens)
        # element with maximal order in the quotient by H
        best, best_k = None, 0
        for x in range(n):
            if x in H:
                continue
            k = order_in(x, H)
            if k > best_k:
                best, best_k = x, k
        # adjust so the lift's true order equals its quotient order
        x, k = best, best_k
        kx = times(k, x)
        fixed = None
        for coeffs in itertools.product(*(range(e) for _, e in gens)):
            h = 0
            for (g, _), c in zip(gens, coeffs):
                h = rng.a(h, times(c, g))
            cand = rng.a(x, h)
            if times(k, cand) == 0 and order_in(cand, H) == k:
                fixed = cand
                break
        assert fixed is not None, "maximal-order lift adjustment must exist"
        gens.append((fixed, k))
        gens.sort(key=lambda ge: -ge[1])
    factors = tuple(sorted((e for _, e in gens if e > 1)))
    group = FiniteAbelianGroup(factors)
    ordered = sorted((ge for ge in gens if ge[1] > 1), key=lambda ge: ge[1])
    table = []
    for coords in group.elements():
        acc = 0
        for c, (g, _) in zip(coords, ordered):
            acc = rng.a(acc, times(c, g))
        table.append(acc)
    assert len(set(table)) == n, "decomposition must enumerate the whole group"
    return group, table
