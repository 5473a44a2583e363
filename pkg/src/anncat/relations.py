"""The seventeen structure relations plus the regularity condition.

The relation set is stated on cocycle-side data: a degree-3 cochain is a
3-cocycle exactly when relations 1..17 vanish and the regularity condition
(reported as relation 18) holds.  Categorical structure data differs from
cocycle data by negating dist_left, so the structure predicate evaluates the
same relations on the flipped tuple.

Sign conventions were pinned computationally: each relation annihilates
every delta2 image in every characteristic, and together with regularity
the set cuts out exactly the tuples whose flip satisfies the coherence
diagrams (kernel equality is asserted in the test suite).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bimodules import Bimodule
from .cochains import Cochain3, ctx_of

RELATION_COUNT = 18
REGULARITY = 18


def _residual_arrays(f: Cochain3):
    """(relation, arity, residual array, mask or None) for relations 1..18."""
    c = ctx_of(f.module)
    n = c.n
    u = f.module.ring.unit
    A, M = c.ADD, c.MUL
    L, R = c.LACT, c.RACT
    neg = c.mneg
    s = c.msum
    z, e, a, l, r = f.components()
    X4, Y4, Z4, T4 = np.indices((n, n, n, n))
    X3, Y3, Z3 = np.indices((n, n, n))
    X2, Y2 = np.indices((n, n))

    out = []
    out.append((1, 4, s(z[Y4, Z4, T4], neg(z[A[X4, Y4], Z4, T4]), z[X4, A[Y4, Z4], T4],
                        neg(z[X4, Y4, A[Z4, T4]]), z[X4, Y4, Z4]), None))
    mask2 = (X3 == 0) | (Y3 == 0) | (Z3 == 0)
    out.append((2, 3, z[X3, Y3, Z3], mask2))
    out.append((3, 3, s(z[X3, Y3, Z3], neg(z[X3, Z3, Y3]), z[Z3, X3, Y3],
                        neg(e[X3, Z3]), e[A[X3, Y3], Z3], neg(e[Y3, Z3])), None))
    out.append((4, 2, s(e[X2, Y2], e[Y2, X2]), None))
    out.append((5, 3, s(L[X3, e[Y3, Z3]], neg(e[M[X3, Y3], M[X3, Z3]]),
                        neg(l[X3, Y3, Z3]), l[X3, Z3, Y3]), None))
    out.append((6, 3, s(R[e[X3, Y3], Z3], neg(e[M[X3, Z3], M[Y3, Z3]]),
                        r[X3, Y3, Z3], neg(r[Y3, X3, Z3])), None))
    out.append((7, 4, s(L[X4, z[Y4, Z4, T4]], neg(z[M[X4, Y4], M[X4, Z4], M[X4, T4]]),
                        neg(l[X4, Z4, T4]), l[X4, A[Y4, Z4], T4],
                        neg(l[X4, Y4, A[Z4, T4]]), l[X4, Y4, Z4]), None))
    out.append((8, 4, s(R[z[X4, Y4, Z4], T4], neg(z[M[X4, T4], M[Y4, T4], M[Z4, T4]]),
                        r[Y4, Z4, T4], neg(r[A[X4, Y4], Z4, T4]),
                        r[X4, A[Y4, Z4], T4], neg(r[X4, Y4, T4])), None))
    XZ, XT, YZ, YT = M[X4, Z4], M[X4, T4], M[Y4, Z4], M[Y4, T4]
    out.append((9, 4, s(r[X4, Y4, A[Z4, T4]], neg(r[X4, Y4, Z4]), neg(r[X4, Y4, T4]),
                        neg(l[X4, Z4, T4]), neg(l[Y4, Z4, T4]), l[A[X4, Y4], Z4, T4],
                        neg(z[A[XZ, XT], YZ, YT]), z[XZ, XT, YZ], neg(e[XT, YZ]),
                        z[A[XZ, YZ], XT, YT], neg(z[XZ, YZ, XT])), None))
    out.append((10, 4, s(a[X4, Y4, A[Z4, T4]], neg(a[X4, Y4, Z4]), neg(a[X4, Y4, T4]),
                         L[X4, l[Y4, Z4, T4]], l[X4, M[Y4, Z4], M[Y4, T4]],
                         neg(l[M[X4, Y4], Z4, T4])), None))
    out.append((11, 4, s(a[X4, A[Y4, Z4], T4], neg(a[X4, Y4, T4]), neg(a[X4, Z4, T4]),
                         neg(L[X4, r[Y4, Z4, T4]]), r[M[X4, Y4], M[X4, Z4], T4],
                         l[X4, M[Y4, T4], M[Z4, T4]], neg(R[l[X4, Y4, Z4], T4])), None))
    out.append((12, 4, s(a[A[X4, Y4], Z4, T4], neg(a[X4, Z4, T4]), neg(a[Y4, Z4, T4]),
                         R[r[X4, Y4, Z4], T4], r[M[X4, Z4], M[Y4, Z4], T4],
                         neg(r[X4, Y4, M[Z4, T4]])), None))
    out.append((13, 4, s(L[X4, a[Y4, Z4, T4]], neg(a[M[X4, Y4], Z4, T4]),
                         a[X4, M[Y4, Z4], T4], neg(a[X4, Y4, M[Z4, T4]]),
                         R[a[X4, Y4, Z4], T4]), None))
    mask14 = (X3 == u) | (Y3 == u) | (Z3 == u)
    out.append((14, 3, a[X3, Y3, Z3], mask14))
    out.append((15, 3, a[X3, Y3, Z3], mask2))
    mask16 = (X3 == u) | mask2
    out.append((16, 3, l[X3, Y3, Z3], mask16))
    mask17 = (Z3 == u) | mask2
    out.append((17, 3, r[X3, Y3, Z3], mask17))
    out.append((18, 1, e[np.arange(n), np.arange(n)], None))
    return out


@dataclass
class Violation:
    relation: int
    args: tuple[int, ...]
    residual: tuple[int, ...]   # module element, invariant-factor coordinates

    def __str__(self):
        return f"relation {self.relation} at {self.args}: residual {self.residual}"


@dataclass
class RelationReport:
    violations: list[Violation]

    @property
    def ok(self) -> bool:
        return not self.violations

    def relations_hit(self) -> set[int]:
        return {v.relation for v in self.violations}

    def __str__(self):
        if self.ok:
            return "PASS"
        head = "; ".join(str(v) for v in self.violations[:5])
        more = len(self.violations) - 5
        return head + (f"; ... {more} more" if more > 0 else "")


def relation_residuals(f: Cochain3, relations=range(1, 19), find_first=False) -> RelationReport:
    """Evaluate canonical relations on cocycle-side data."""
    module = f.module
    wanted = set(relations)
    violations = []
    for rel, arity, resid, mask in _residual_arrays(f):
        if rel not in wanted:
            continue
        if mask is not None:
            resid = np.where(mask, resid, 0)
        bad = np.argwhere(resid != 0)
        for pos in bad:
            args = tuple(int(v) for v in pos)
            violations.append(Violation(rel, args, module.to_tuple(int(resid[tuple(pos)]))))
            if find_first:
                return RelationReport(violations)
    violations.sort(key=lambda v: (v.relation, v.args))
    return RelationReport(violations)


def is_cocycle3(f: Cochain3, find_first=False) -> RelationReport:
    """Relations 1..17 plus the regularity condition (relation 18)."""
    return relation_residuals(f, range(1, 19), find_first)


def is_ann_structure(g: Cochain3, find_first=False) -> RelationReport:
    """Relations 1..17 on categorical structure data (dist_left sign-flipped)."""
    return relation_residuals(g.flip(), range(1, 18), find_first)


def relation_rows(module: Bimodule, include_regularity: bool):
    """Deterministic (relation, args) enumeration used for constraint matrices."""
    f = Cochain3.zero(module)
    rows = []
    for rel, arity, resid, mask in _residual_arrays(f):
        if rel == REGULARITY and not include_regularity:
            continue
        for pos in np.ndindex(resid.shape):
            if mask is not None and not mask[pos]:
                continue
            rows.append((rel, pos))
    return rows


def relation_matrix(basis, include_regularity: bool):
    """Integer matrix of all relation residuals as a map on basis coordinates.

    Rows are ordered (relation, args, module factor); returns (rows_matrix,
    row_moduli, row_index) with zero rows dropped from the matrix but kept in
    row_index bookkeeping order.
    """
    module = basis.module
    k = module.group.rank
    factors = module.group.invariant_factors
    probes = []
    for j in range(basis.num_coords):
        vec = np.zeros(basis.num_coords, dtype=np.int64)
        vec[j] = 1
        f = basis.decode(vec)
        flat = []
        for rel, arity, resid, mask in _residual_arrays(f):
            if rel == REGULARITY and not include_regularity:
                continue
            if mask is not None:
                resid = np.where(mask, resid, 0)
            flat.append(basis.tup[resid.ravel()])   # (#instances, k) coordinates
        probes.append(np.concatenate(flat, axis=0) if flat
                      else np.zeros((0, k), dtype=np.int64))
    if basis.num_coords == 0 or k == 0:
        return np.zeros((0, basis.num_coords), dtype=np.int64), np.zeros(0, dtype=np.int64)
    stacked = np.stack(probes, axis=2)              # (#instances, k, coords)
    inst, _, coords = stacked.shape
    rows = stacked.reshape(inst * k, coords)
    # row order is (instance, factor); moduli follow the factor of each row
    row_moduli = np.array([factors[f] for _ in range(inst) for f in range(k)],
                          dtype=np.int64)
    keep = np.flatnonzero(rows.any(axis=1))
    return rows[keep], row_moduli[keep]
