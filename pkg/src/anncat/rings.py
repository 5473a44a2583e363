"""Finite rings given by exhaustively validated operation tables.

Elements are indices 0..n-1 with index 0 fixed as the additive zero.  A
`Rng` need not have a unit (the extension machinery works with ideals and
null rings); `FiniteRing` requires a two-sided unit distinct from zero.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np


class RingAxiomError(ValueError):
    """A ring axiom failed; carries the axiom name and a witness tuple."""

    def __init__(self, axiom: str, witness: tuple):
        super().__init__(f"{axiom} fails at {witness}")
        self.axiom = axiom
        self.witness = witness


def _as_table(table, n, name):
    arr = np.asarray(table, dtype=np.int64)
    if arr.shape != (n, n):
        raise RingAxiomError(f"{name} table shape", (arr.shape,))
    if arr.min(initial=0) < 0 or arr.max(initial=0) >= n:
        bad = np.argwhere((arr < 0) | (arr >= n))[0]
        raise RingAxiomError(f"{name} table range", tuple(int(v) for v in bad))
    return arr


@dataclass
class Rng:
    """Finite (possibly nonunital) associative ring on indices 0..n-1."""
    order: int
    add: np.ndarray
    mul: np.ndarray
    name: str = ""
    unit: int | None = field(default=None)

    def __post_init__(self):
        n = self.order
        self.add = _as_table(self.add, n, "addition")
        self.mul = _as_table(self.mul, n, "multiplication")
        self.validate()

    # -- arithmetic helpers -------------------------------------------------
    def a(self, x: int, y: int) -> int:
        return int(self.add[x, y])

    def m(self, x: int, y: int) -> int:
        return int(self.mul[x, y])

    def neg(self, x: int) -> int:
        return int(self._neg[x])

    def elements(self):
        return range(self.order)

    def validate(self):
        n = self.order
        add, mul = self.add, self.mul
        # abelian group under addition with zero = 0
        if n < 1:
            raise RingAxiomError("nonempty", ())
        for x in range(n):
            if add[x, 0] != x:
                raise RingAxiomError("additive zero", (x,))
        if not np.array_equal(add, add.T):
            x, y = map(int, np.argwhere(add != add.T)[0])
            raise RingAxiomError("additive commutativity", (x, y))
        neg = np.full(n, -1, dtype=np.int64)
        for x in range(n):
            zeros = np.flatnonzero(add[x] == 0)
            if zeros.size == 0:
                raise RingAxiomError("additive inverse", (x,))
            neg[x] = zeros[0]
        self._neg = neg
        # associativity of + : (x+y)+z == x+(y+z), vectorized
        lhs = add[add, :]            # lhs[x,y,z] = (x+y)+z
        rhs = add[:, add]            # rhs[x,y,z] = x+(y+z)
        if not np.array_equal(lhs, rhs):
            w = tuple(int(v) for v in np.argwhere(lhs != rhs)[0])
            raise RingAxiomError("additive associativity", w)
        # multiplication: associativity and bilinearity
        lhs = mul[mul, :]
        rhs = mul[:, mul]
        if not np.array_equal(lhs, rhs):
            w = tuple(int(v) for v in np.argwhere(lhs != rhs)[0])
            raise RingAxiomError("multiplicative associativity", w)
        left = mul[:, add]           # x(y+z)
        right = add[mul[:, :, None], mul[:, None, :]]  # xy + xz
        if not np.array_equal(left, right):
            w = tuple(int(v) for v in np.argwhere(left != right)[0])
            raise RingAxiomError("left distributivity", w)
        left = mul[add, :]           # (x+y)z
        right = add[mul[:, None, :], mul[None, :, :]]  # xz + yz
        if not np.array_equal(left, right):
            w = tuple(int(v) for v in np.argwhere(left != right)[0])
            raise RingAxiomError("right distributivity", w)
        if self.unit is not None:
            u = self.unit
            if u == 0 and n > 1:
                raise RingAxiomError("unit distinct from zero", (u,))
            for x in range(n):
                if mul[u, x] != x or mul[x, u] != x:
                    raise RingAxiomError("two-sided unit", (u, x))

    def is_unital(self) -> bool:
        return self.unit is not None

    def __repr__(self):
        tag = self.name or f"order {self.order}"
        return f"<{'ring' if self.unit is not None else 'rng'} {tag}>"


class FiniteRing(Rng):
    """Unital finite ring; the unit index is mandatory."""

    def __post_init__(self):
        if self.unit is None:
            raise RingAxiomError("unit required", ())
        super().__post_init__()


# -- constructors ------------------------------------------------------------

def cyclic_ring(n: int) -> FiniteRing:
    """Z_n with the usual modular tables."""
    idx = np.arange(n)
    return FiniteRing(n, (idx[:, None] + idx[None, :]) % n,
                      (idx[:, None] * idx[None, :]) % n,
                      name=f"Z{n}", unit=1 % n if n > 1 else 0)


def dual_numbers(n: int) -> FiniteRing:
    """Z_n[e]/(e^2): elements a + b*e encoded as a + n*b."""
    size = n * n
    add = np.zeros((size, size), dtype=np.int64)
    mul = np.zeros((size, size), dtype=np.int64)
    for (a1, b1), (a2, b2) in itertools.product(itertools.product(range(n), repeat=2), repeat=2):
        i, j = a1 + n * b1, a2 + n * b2
        add[i, j] = (a1 + a2) % n + n * ((b1 + b2) % n)
        mul[i, j] = (a1 * a2) % n + n * ((a1 * b2 + b1 * a2) % n)
    return FiniteRing(size, add, mul, name=f"Z{n}[e]", unit=1)


def product_ring(r1: Rng, r2: Rng) -> Rng:
    """Direct product; unital iff both factors are."""
    n1, n2 = r1.order, r2.order
    size = n1 * n2
    add = np.zeros((size, size), dtype=np.int64)
    mul = np.zeros((size, size), dtype=np.int64)
    for x1, x2, y1, y2 in itertools.product(range(n1), range(n2), range(n1), range(n2)):
        i, j = x1 * n2 + x2, y1 * n2 + y2
        add[i, j] = r1.a(x1, y1) * n2 + r2.a(x2, y2)
        mul[i, j] = r1.m(x1, y1) * n2 + r2.m(x2, y2)
    unit = None
    if r1.unit is not None and r2.unit is not None:
        unit = r1.unit * n2 + r2.unit
    cls = FiniteRing if unit is not None else Rng
    return cls(size, add, mul, name=f"{r1.name}x{r2.name}", unit=unit)


def ring_from_tables(add, mul, zero: int = 0, unit: int | None = None, name: str = "") -> Rng:
    """Validated ring from explicit tables; zero must be index 0."""
    if zero != 0:
        raise RingAxiomError("zero must be element 0", (zero,))
    n = len(add)
    cls = FiniteRing if unit is not None else Rng
    return cls(n, add, mul, name=name, unit=unit)


def null_ring(n: int) -> Rng:
    """Cyclic group Z_n with all products zero."""
    idx = np.arange(n)
    return Rng(n, (idx[:, None] + idx[None, :]) % n,
               np.zeros((n, n), dtype=np.int64), name=f"null{n}")


def scaled_cyclic_rng(k: int, n: int) -> Rng:
    """The nonunital subring kZ_n of Z_n (n divisible by k); element i is k*i."""
    if n % k:
        raise ValueError("k must divide n")
    size = n // k
    add = np.zeros((size, size), dtype=np.int64)
    mul = np.zeros((size, size), dtype=np.int64)
    for i, j in itertools.product(range(size), repeat=2):
        add[i, j] = ((k * i + k * j) % n) // k
        mul[i, j] = ((k * i * k * j) % n) // k
    return Rng(size, add, mul, name=f"{k}Z{n}")


def ring_isomorphism(r1: Rng, r2: Rng) -> list[int] | None:
    """A bijection of indices carrying both tables across, or None.

    Backtracking on images; zero maps to zero and units correspond.  Meant
    for desk-scale orders (the extension fixtures use order <= 8).
    """
    if r1.order != r2.order:
        return None
    if (r1.unit is None) != (r2.unit is None):
        return None
    n = r1.order
    image = [-1] * n
    used = [False] * n
    image[0] = 0
    used[0] = True
    if r1.unit is not None:
        u1, u2 = r1.unit, r2.unit
        if u1 != 0:
            image[u1] = u2
            used[u2] = True

    def extend(pos):
        while pos < n and image[pos] != -1:
            pos += 1
        if pos == n:
            return True
        for tgt in range(n):
            if used[tgt]:
                continue
            image[pos] = tgt
            used[tgt] = True
            if _consistent(r1, r2, image) and extend(pos + 1):
                return True
            image[pos] = -1
            used[tgt] = False
        return False

    return image.copy() if extend(0) else None


def _consistent(r1, r2, image):
    for x in range(r1.order):
        if image[x] == -1:
            continue
        for y in range(r1.order):
            if image[y] == -1:
                continue
            s = image[r1.a(x, y)]
            if s != -1 and s != r2.a(image[x], image[y]):
                return False
            p = image[r1.m(x, y)]
            if p != -1 and p != r2.m(image[x], image[y]):
                return False
    return True
