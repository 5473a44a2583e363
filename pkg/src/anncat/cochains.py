"""Normalized cochains over a (ring, bimodule) pair and the two explicit
differentials.

Tables hold module-element indices and are evaluated with numpy gather
operations against the bimodule's addition/action tables, so every
computation is exact integer index arithmetic.

Component naming: a degree-3 cochain bundles five tables
  add_assoc(x,y,z)   associativity defect of the additive structure
  add_comm(x,y)      commutativity defect
  mul_assoc(x,y,z)   associativity defect of the multiplicative structure
  dist_left(x,y,z)   left distributivity defect
  dist_right(x,y,z)  right distributivity defect
A degree-2 cochain bundles add_part (additive compatibility defect) and
mul_part (multiplicative one); a degree-1 cochain is a single table.

Normalization: every component vanishes when an additive argument is 0;
mul_part, mul_assoc vanish when any argument is the unit; dist_left when its
first argument is the unit; dist_right when its third argument is the unit.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .bimodules import Bimodule
from .groups import FiniteAbelianGroup
from . import guards


class NormalizationError(ValueError):
    pass


def _table(values, shape):
    arr = np.asarray(values, dtype=np.int64)
    if arr.shape != shape:
        raise ValueError(f"table shape {arr.shape}, expected {shape}")
    return arr


class _Ctx:
    """Precomputed index grids shared by the differentials and relations."""

    def __init__(self, module: Bimodule):
        self.module = module
        n = module.ring.order
        self.n = n
        self.ADD = module.ring.add
        self.MUL = module.ring.mul
        self.MADD = module.madd
        self.MNEG = module.mneg
        self.LACT = module.left
        self.RACT = module.right

    def msum(self, *terms):
        acc = terms[0]
        for t in terms[1:]:
            acc = self.MADD[acc, t]
        return acc

    def mneg(self, t):
        return self.MNEG[t]


_CTX_CACHE: dict[int, _Ctx] = {}


def ctx_of(module: Bimodule) -> _Ctx:
    key = id(module)
    if key not in _CTX_CACHE:
        _CTX_CACHE[key] = _Ctx(module)
    return _CTX_CACHE[key]


@dataclass
class Cochain1:
    module: Bimodule
    values: np.ndarray

    def __post_init__(self):
        n = self.module.ring.order
        self.values = _table(self.values, (n,))
        u = self.module.ring.unit
        if self.values[0] != 0 or self.values[u] != 0:
            raise NormalizationError("degree-1 cochain must vanish at 0 and 1")

    @classmethod
    def zero(cls, module):
        return cls(module, np.zeros(module.ring.order, dtype=np.int64))

    def __eq__(self, other):
        return isinstance(other, Cochain1) and np.array_equal(self.values, other.values)

    def sub(self, other: "Cochain1") -> "Cochain1":
        c = ctx_of(self.module)
        return Cochain1(self.module, c.msum(self.values, c.mneg(other.values)))


@dataclass
class Cochain2:
    module: Bimodule
    add_part: np.ndarray
    mul_part: np.ndarray

    def __post_init__(self):
        n = self.module.ring.order
        self.add_part = _table(self.add_part, (n, n))
        self.mul_part = _table(self.mul_part, (n, n))
        u = self.module.ring.unit
        if self.add_part[0, :].any() or self.add_part[:, 0].any():
            raise NormalizationError("add_part must vanish on zero arguments")
        for bad in (self.mul_part[0, :], self.mul_part[:, 0],
                    self.mul_part[u, :], self.mul_part[:, u]):
            if bad.any():
                raise NormalizationError("mul_part must vanish on zero and unit arguments")

    @classmethod
    def zero(cls, module):
        n = module.ring.order
        return cls(module, np.zeros((n, n), dtype=np.int64), np.zeros((n, n), dtype=np.int64))

    def __eq__(self, other):
        return (isinstance(other, Cochain2)
                and np.array_equal(self.add_part, other.add_part)
                and np.array_equal(self.mul_part, other.mul_part))

    def sub(self, other: "Cochain2") -> "Cochain2":
        c = ctx_of(self.module)
        return Cochain2(self.module,
                        c.msum(self.add_part, c.mneg(other.add_part)),
                        c.msum(self.mul_part, c.mneg(other.mul_part)))

    def is_zero(self) -> bool:
        return not (self.add_part.any() or self.mul_part.any())


COMPONENTS3 = ("add_assoc", "add_comm", "mul_assoc", "dist_left", "dist_right")


@dataclass
class Cochain3:
    module: Bimodule
    add_assoc: np.ndarray
    add_comm: np.ndarray
    mul_assoc: np.ndarray
    dist_left: np.ndarray
    dist_right: np.ndarray
    normalized: bool = True   # False admits arbitrary shaped tables (checker inputs)

    def __post_init__(self):
        n = self.module.ring.order
        self.add_assoc = _table(self.add_assoc, (n, n, n))
        self.add_comm = _table(self.add_comm, (n, n))
        self.mul_assoc = _table(self.mul_assoc, (n, n, n))
        self.dist_left = _table(self.dist_left, (n, n, n))
        self.dist_right = _table(self.dist_right, (n, n, n))
        if not self.normalized:
            return
        u = self.module.ring.unit
        z, e, a, l, r = (self.add_assoc, self.add_comm, self.mul_assoc,
                         self.dist_left, self.dist_right)
        if z[0, :, :].any() or z[:, 0, :].any() or z[:, :, 0].any():
            raise NormalizationError("add_assoc must vanish on zero arguments")
        if e[0, :].any() or e[:, 0].any():
            raise NormalizationError("add_comm must vanish on zero arguments")
        for bad in (a[0, :, :], a[:, 0, :], a[:, :, 0], a[u, :, :], a[:, u, :], a[:, :, u]):
            if bad.any():
                raise NormalizationError("mul_assoc must vanish on zero and unit arguments")
        for bad in (l[0, :, :], l[:, 0, :], l[:, :, 0], l[u, :, :]):
            if bad.any():
                raise NormalizationError("dist_left must vanish on zero arguments and unit first argument")
        for bad in (r[0, :, :], r[:, 0, :], r[:, :, 0], r[:, :, u]):
            if bad.any():
                raise NormalizationError("dist_right must vanish on zero arguments and unit third argument")

    @classmethod
    def zero(cls, module):
        n = module.ring.order
        z3 = lambda: np.zeros((n, n, n), dtype=np.int64)
        return cls(module, z3(), np.zeros((n, n), dtype=np.int64), z3(), z3(), z3())

    def components(self):
        return (self.add_assoc, self.add_comm, self.mul_assoc, self.dist_left, self.dist_right)

    def __eq__(self, other):
        return isinstance(other, Cochain3) and all(
            np.array_equal(x, y) for x, y in zip(self.components(), other.components()))

    def is_zero(self) -> bool:
        return not any(t.any() for t in self.components())

    def sub(self, other: "Cochain3") -> "Cochain3":
        c = ctx_of(self.module)
        return Cochain3(self.module, *(c.msum(x, c.mneg(y))
                                       for x, y in zip(self.components(), other.components())),
                        normalized=self.normalized and other.normalized)

    def flip(self) -> "Cochain3":
        """Negate dist_left: the bridge between cocycle data and categorical
        structure labels (involutive)."""
        c = ctx_of(self.module)
        return Cochain3(self.module, self.add_assoc, self.add_comm, self.mul_assoc,
                        c.mneg(self.dist_left), self.dist_right, normalized=self.normalized)


AnnStructure = Cochain3  # same carrier; validity predicates live in relations.py


def delta1(a: Cochain1) -> Cochain2:
    """mu(x,y) = a(x) - a(x+y) + a(y); nu(x,y) = x.a(y) - a(xy) + a(x).y"""
    c = ctx_of(a.module)
    n = c.n
    X, Y = np.indices((n, n))
    v = a.values
    mu = c.msum(v[X], c.mneg(v[c.ADD[X, Y]]), v[Y])
    nu = c.msum(c.LACT[X, v[Y]], c.mneg(v[c.MUL[X, Y]]), c.RACT[v[X], Y])
    return Cochain2(a.module, mu, nu)


def delta2(g: Cochain2) -> Cochain3:
    """The five-component differential; output is a valid degree-3 cochain.

    Component sign conventions are pinned by delta2(delta1(.)) == 0 in every
    characteristic together with the coherence oracle (see tests).
    """
    c = ctx_of(g.module)
    n = c.n
    X, Y, Z = np.indices((n, n, n))
    A, M = c.ADD, c.MUL
    mu, nu = g.add_part, g.mul_part
    neg = c.mneg
    zeta = neg(c.msum(mu[Y, Z], neg(mu[A[X, Y], Z]), mu[X, A[Y, Z]], neg(mu[X, Y])))
    X2, Y2 = np.indices((n, n))
    eta = neg(c.msum(mu[X2, Y2], neg(mu[Y2, X2])))
    alpha = c.msum(c.LACT[X, nu[Y, Z]], neg(nu[M[X, Y], Z]), nu[X, M[Y, Z]],
                   neg(c.RACT[nu[X, Y], Z]))
    lam = neg(c.msum(nu[X, A[Y, Z]], neg(nu[X, Y]), neg(nu[X, Z]),
                     c.LACT[X, mu[Y, Z]], neg(mu[M[X, Y], M[X, Z]])))
    rho = c.msum(nu[A[X, Y], Z], neg(nu[X, Z]), neg(nu[Y, Z]),
                 c.RACT[mu[X, Y], Z], neg(mu[M[X, Z], M[Y, Z]]))
    return Cochain3(g.module, zeta, eta, alpha, lam, rho)


# -- normalized bases ---------------------------------------------------------

def free_positions(level: int, module: Bimodule) -> list[tuple]:
    """(component, args) positions not forced to zero by normalization."""
    n = module.ring.order
    u = module.ring.unit
    nz = [x for x in range(n) if x != 0]
    nzu = [x for x in range(n) if x not in (0, u)]
    if level == 1:
        return [("values", (x,)) for x in nzu]
    if level == 2:
        return ([("add_part", p) for p in itertools.product(nz, nz)]
                + [("mul_part", p) for p in itertools.product(nzu, nzu)])
    if level == 3:
        return ([("add_assoc", p) for p in itertools.product(nz, nz, nz)]
                + [("add_comm", p) for p in itertools.product(nz, nz)]
                + [("mul_assoc", p) for p in itertools.product(nzu, nzu, nzu)]
                + [("dist_left", p) for p in itertools.product(nzu, nz, nz)]
                + [("dist_right", p) for p in itertools.product(nz, nz, nzu)])
    raise ValueError("level must be 1, 2 or 3")


_LEVEL_CLASS = {1: Cochain1, 2: Cochain2, 3: Cochain3}
_LEVEL_FIELDS = {1: ("values",), 2: ("add_part", "mul_part"), 3: COMPONENTS3}


class CochainBasis:
    """Coordinates for the normalized cochain group of one level.

    Layout is factor-major: coordinate f*P + p holds the f-th invariant
    coordinate of the module value at position p, so the coordinate moduli
    form the canonical ascending divisor chain.
    """

    def __init__(self, level: int, module: Bimodule, guard: int | None = None):
        self.level = level
        self.module = module
        self.positions = free_positions(level, module)
        guards.check_basis(f"C^{level} basis", len(self.positions), guard)
        self.k = module.group.rank
        P = len(self.positions)
        self.num_coords = self.k * P
        self.moduli = np.array([d for d in module.group.invariant_factors for _ in range(P)],
                               dtype=np.int64)
        self.group = FiniteAbelianGroup(tuple(self.moduli.tolist()))
        # value tuples for every module index, as an array
        self.tup = np.array([module.to_tuple(i) for i in range(module.size)],
                            dtype=np.int64).reshape(module.size, self.k)

    def encode(self, cochain) -> np.ndarray:
        vec = np.zeros(self.num_coords, dtype=np.int64)
        P = len(self.positions)
        for p, (comp, args) in enumerate(self.positions):
            m_idx = int(getattr(cochain, comp)[args])
            for f in range(self.k):
                vec[f * P + p] = self.tup[m_idx, f]
        return vec

    def decode(self, vec) -> object:
        n = self.module.ring.order
        P = len(self.positions)
        shapes = {1: {"values": (n,)},
                  2: {"add_part": (n, n), "mul_part": (n, n)},
                  3: {"add_assoc": (n, n, n), "add_comm": (n, n), "mul_assoc": (n, n, n),
                      "dist_left": (n, n, n), "dist_right": (n, n, n)}}[self.level]
        tables = {name: np.zeros(shape, dtype=np.int64) for name, shape in shapes.items()}
        for p, (comp, args) in enumerate(self.positions):
            t = tuple(int(vec[f * P + p]) % int(self.module.group.invariant_factors[f])
                      for f in range(self.k))
            tables[comp][args] = self.module.from_tuple(t)
        cls = _LEVEL_CLASS[self.level]
        return cls(self.module, **tables)

    def order(self) -> int:
        return self.group.order

    def enumerate(self, guard: int | None = None):
        """Stream every normalized cochain exactly once."""
        guards.check_stream(f"C^{self.level} enumeration", self.order(), guard)
        for vec in itertools.product(*(range(int(m)) for m in self.moduli)):
            yield self.decode(np.array(vec, dtype=np.int64))

    def random(self, rng) -> object:
        vec = np.array([rng.randrange(int(m)) for m in self.moduli], dtype=np.int64)
        return self.decode(vec)


def delta_matrix(level: int, module: Bimodule, guard: int | None = None):
    """Integer matrix of delta_level : C^level -> C^(level+1) in basis coords."""
    src = CochainBasis(level, module, guard)
    dst = CochainBasis(level + 1, module, guard)
    delta = {1: delta1, 2: delta2}[level]
    cols = []
    for j in range(src.num_coords):
        vec = np.zeros(src.num_coords, dtype=np.int64)
        vec[j] = 1
        cols.append(dst.encode(delta(src.decode(vec))))
    A = (np.stack(cols, axis=1) if cols
         else np.zeros((dst.num_coords, 0), dtype=np.int64))
    return src, dst, A
