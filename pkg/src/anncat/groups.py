"""Finite abelian groups in invariant-factor form, homomorphisms, and
kernel/image subquotients computed through exact integer linear algebra.

Elements of a group with invariant factors (d1, ..., dk) are integer tuples
(x1, ..., xk) with 0 <= xi < di.  The canonical form keeps di | d(i+1) and
drops factors equal to 1, so equal groups compare equal structurally.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .intlinalg import (
    diagonal_of,
    express_in_hermite,
    hermite_column_basis,
    lex_least_in_coset,
    kernel_mod,
    smith_normal_form,
    smith_normal_form_with_uinv,
)


def canonical_invariants(factors) -> tuple[int, ...]:
    """Canonical divisor chain of a finite abelian group given cyclic orders."""
    factors = [int(f) for f in factors if int(f) != 1]
    if not factors:
        return ()
    if any(f < 1 for f in factors):
        raise ValueError("invariant factors must be positive")
    if all(factors[i] and factors[i + 1] % factors[i] == 0 for i in range(len(factors) - 1)):
        return tuple(factors)
    # renormalize an arbitrary cyclic decomposition via SNF of diag(factors)
    _, D, _ = smith_normal_form([[factors[i] if i == j else 0 for j in range(len(factors))]
                                 for i in range(len(factors))])
    return tuple(d for d in diagonal_of(D) if d != 1)


@dataclass(frozen=True)
class FiniteAbelianGroup:
    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        fs = self.invariant_factors
        if any(f < 1 for f in fs):
            raise ValueError("invariant factors must be >= 1")
        if any(f == 1 for f in fs):
            raise ValueError("canonical form excludes trivial factors")
        for a, b in zip(fs, fs[1:]):
            if b % a:
                raise ValueError(f"divisor chain violated: {a} does not divide {b}")

    @classmethod
    def from_factors(cls, factors) -> "FiniteAbelianGroup":
        return cls(canonical_invariants(factors))

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def add(self, a, b) -> tuple[int, ...]:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.invariant_factors))

    def neg(self, a) -> tuple[int, ...]:
        return tuple((-x) % d for x, d in zip(a, self.invariant_factors))

    def sub(self, a, b) -> tuple[int, ...]:
        return tuple((x - y) % d for x, y, d in zip(a, b, self.invariant_factors))

    def smul(self, n: int, a) -> tuple[int, ...]:
        return tuple((n * x) % d for x, d in zip(a, self.invariant_factors))

    def reduce(self, a) -> tuple[int, ...]:
        return tuple(x % d for x, d in zip(a, self.invariant_factors))

    def elements(self):
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def index_of(self, a) -> int:
        idx = 0
        for x, d in zip(a, self.invariant_factors):
            idx = idx * d + x
        return idx

    def element_at(self, idx: int) -> tuple[int, ...]:
        out = []
        for d in reversed(self.invariant_factors):
            out.append(idx % d)
            idx //= d
        return tuple(reversed(out))

    def element_order(self, a) -> int:
        return _lcm([d // math.gcd(x, d) for x, d in zip(a, self.invariant_factors)])

    def __str__(self):
        if not self.invariant_factors:
            return "trivial group"
        return " x ".join(f"C{d}" for d in self.invariant_factors)


def _lcm(xs):
    out = 1
    for x in xs:
        out = out * x // math.gcd(out, x)
    return out


@dataclass
class GroupHom:
    """Homomorphism given by images of the domain's standard generators.

    matrix[i][j] is the i-th codomain coordinate of the image of the j-th
    domain generator; the map sends (x1,..,xk) to sum xj * image_j.
    """
    domain: FiniteAbelianGroup
    codomain: FiniteAbelianGroup
    matrix: list[list[int]]

    def __post_init__(self):
        rows, cols = self.codomain.rank, self.domain.rank
        if len(self.matrix) != rows or any(len(r) != cols for r in self.matrix):
            raise ValueError("matrix shape does not match domain/codomain ranks")
        self.matrix = [[int(v) % d for v in row]
                       for row, d in zip(self.matrix, self.codomain.invariant_factors)]
        for j, dj in enumerate(self.domain.invariant_factors):
            img = self.apply(tuple(1 if i == j else 0 for i in range(cols)))
            if any((dj * x) % e for x, e in zip(img, self.codomain.invariant_factors)):
                raise ValueError(f"not well defined on generator {j} of order {dj}")

    @classmethod
    def zero(cls, domain, codomain):
        return cls(domain, codomain, [[0] * domain.rank for _ in range(codomain.rank)])

    def apply(self, a) -> tuple[int, ...]:
        return tuple(sum(row[j] * a[j] for j in range(self.domain.rank)) % d
                     for row, d in zip(self.matrix, self.codomain.invariant_factors))

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.matrix for v in row)

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self o other."""
        if other.codomain != self.domain:
            raise ValueError("composition mismatch")
        m = [[sum(self.matrix[i][k] * other.matrix[k][j] for k in range(self.domain.rank))
              for j in range(other.domain.rank)] for i in range(self.codomain.rank)]
        return GroupHom(other.domain, self.codomain, m)


@dataclass
class Subquotient:
    """ker(h)/im(k) with a deterministic representative section."""
    group: FiniteAbelianGroup
    ambient: FiniteAbelianGroup
    _gen_columns: list[list[int]]          # ambient coordinates of quotient generators
    _reduction_gens: np.ndarray            # generators of im(k) inside the ambient group

    def representative(self, element) -> tuple[int, ...]:
        """Lexicographically least preimage tuple of a quotient element."""
        amb = self.ambient
        v = [0] * amb.rank
        for coeff, col in zip(element, self._gen_columns):
            for i in range(amb.rank):
                v[i] += coeff * col[i]
        v = lex_least_in_coset(v, self._reduction_gens, amb.invariant_factors)
        return tuple(int(x) for x in v)

    def representatives(self):
        for el in self.group.elements():
            yield el, self.representative(el)


def subgroup_lattice(generators, ambient: FiniteAbelianGroup) -> list[list[int]]:
    """Echelon basis in Z^rank of the lattice <generators, moduli vectors>."""
    rank = ambient.rank
    cols = [list(map(int, g)) for g in generators]
    for j, d in enumerate(ambient.invariant_factors):
        cols.append([d if i == j else 0 for i in range(rank)])
    return hermite_column_basis(cols, rank)


def quotient_of_lattices(big_basis, small_basis, ambient: FiniteAbelianGroup):
    """Invariants and generator columns of (big lattice)/(small lattice)."""
    rank = ambient.rank
    if rank == 0:
        return FiniteAbelianGroup(()), []
    X = []
    for col in small_basis:
        coeffs = express_in_hermite(big_basis, col)
        if coeffs is None:
            raise ValueError("small lattice is not contained in big lattice")
        X.append(coeffs)
    # columns of X express small basis in big basis coordinates
    Xmat = [[X[j][i] for j in range(len(X))] for i in range(rank)]
    U, D, V, Uinv = smith_normal_form_with_uinv(Xmat)
    diag = diagonal_of(D)
    gen_cols = []
    invs = []
    for i, d in enumerate(diag):
        if d == 1:
            continue
        # column i of B * Uinv is the ambient image of the i-th SNF generator
        col = [sum(big_basis[j][r] * Uinv[j][i] for j in range(rank)) for r in range(rank)]
        gen_cols.append([c % m for c, m in zip(col, ambient.invariant_factors)])
        invs.append(d)
    group = FiniteAbelianGroup.from_factors(invs)
    # canonical_invariants sorts via SNF; diag already satisfies the chain
    assert group.invariant_factors == tuple(d for d in invs), "divisor chain expected from SNF"
    return group, gen_cols


def subquotient(h: GroupHom, k: GroupHom) -> Subquotient:
    """ker(h)/im(k), rejecting inputs with h o k != 0 (witness reported)."""
    if h.domain != k.codomain:
        raise ValueError("im(k) must land in dom(h)")
    comp = h.compose(k)
    if not comp.is_zero():
        for j in range(k.domain.rank):
            gen = tuple(1 if i == j else 0 for i in range(k.domain.rank))
            if any(comp.apply(gen)):
                raise ValueError(f"h o k != 0: witness generator {gen} maps to {comp.apply(gen)}")
    amb = h.domain
    rank = amb.rank
    if rank == 0:
        return Subquotient(FiniteAbelianGroup(()), amb, [], np.zeros((0, 0), dtype=np.int64))
    rows = np.array(h.matrix, dtype=np.int64).reshape(h.codomain.rank, rank)
    ker_gens = kernel_mod(rows, h.codomain.invariant_factors, amb.invariant_factors)
    ker_basis = subgroup_lattice([ker_gens[:, j] for j in range(ker_gens.shape[1])], amb)
    im_generators = [[k.matrix[i][j] for i in range(rank)] for j in range(k.domain.rank)]
    im_basis = subgroup_lattice(im_generators, amb)
    group, gen_cols = quotient_of_lattices(ker_basis, im_basis, amb)
    red = np.array(im_generators, dtype=np.int64).T if im_generators else np.zeros((rank, 0), dtype=np.int64)
    return Subquotient(group, amb, gen_cols, red)
