"""Skeletal categorical rings over a (ring, bimodule) pair and the
coherence verifier.

Objects are ring elements; the morphisms s -> s are pairs (s, u) with u a
module element, composed by adding labels.  The two operations act on
morphisms by

    (s, u) (+) (t, v) = (s + t, u + v)
    (s, u) (x) (t, v) = (s t, s.v + u.t)

The canonical isomorphisms read their labels from a structure table
(a Cochain3-shaped bundle).  The verifier compiles each axiom into a pair
of morphism paths and compares labels; conventions (associativity maps
oriented x(yz) -> (xy)z, commutativity entering paths through its inverse)
are pinned so that the diagrams cut out exactly the flips of 3-cocycles;
the test suite asserts that kernel equality against the relation module.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .bimodules import Bimodule
from .cochains import AnnStructure, Cochain3, ctx_of
from .relations import is_ann_structure, RelationReport


@dataclass(frozen=True)
class MorphismRM:
    obj: int     # ring element index (source = target)
    label: int   # module element index


class CategoricalRing:
    """Concrete skeletal categorical ring of a given type."""

    def __init__(self, module: Bimodule, structure: AnnStructure, check=False):
        if structure.module is not module:
            if structure.module.ring is not module.ring or structure.module.group != module.group:
                raise ValueError("structure tables must live over the same (ring, module) pair")
        self.ring = module.ring
        self.module = module
        self.structure = structure
        self._ctx = ctx_of(module)
        if check:
            rep = is_ann_structure(structure)
            if not rep.ok:
                raise ValueError(f"structure fails the coherence relations: {rep}")

    @classmethod
    def of_cocycle(cls, cocycle: Cochain3, check=False) -> "CategoricalRing":
        """Structure labels of a 3-cocycle: the dist_left sign flip."""
        return cls(cocycle.module, cocycle.flip(), check=check)

    @classmethod
    def strict(cls, module: Bimodule) -> "CategoricalRing":
        return cls(module, Cochain3.zero(module))

    # -- morphism arithmetic --------------------------------------------------
    def identity(self, x: int) -> MorphismRM:
        return MorphismRM(x % self.ring.order, 0)

    def compose(self, f: MorphismRM, g: MorphismRM) -> MorphismRM:
        if f.obj != g.obj:
            raise ValueError(f"object mismatch: {f.obj} vs {g.obj}")
        return MorphismRM(f.obj, self.module.add(f.label, g.label))

    def oplus(self, f: MorphismRM, g: MorphismRM) -> MorphismRM:
        return MorphismRM(self.ring.a(f.obj, g.obj), self.module.add(f.label, g.label))

    def otimes(self, f: MorphismRM, g: MorphismRM) -> MorphismRM:
        lab = self.module.add(self.module.act_left(f.obj, g.label),
                              self.module.act_right(f.label, g.obj))
        return MorphismRM(self.ring.m(f.obj, g.obj), lab)

    def inverse(self, f: MorphismRM) -> MorphismRM:
        return MorphismRM(f.obj, self.module.neg(f.label))

    # -- structure morphisms ---------------------------------------------------
    def assoc_add(self, x, y, z) -> MorphismRM:
        R = self.ring
        return MorphismRM(R.a(R.a(x, y), z), int(self.structure.add_assoc[x, y, z]))

    def comm(self, x, y) -> MorphismRM:
        return MorphismRM(self.ring.a(x, y), int(self.structure.add_comm[x, y]))

    def assoc_mul(self, x, y, z) -> MorphismRM:
        """Oriented x(yz) -> (xy)z."""
        R = self.ring
        return MorphismRM(R.m(R.m(x, y), z), int(self.structure.mul_assoc[x, y, z]))

    def dist_left(self, a, x, y) -> MorphismRM:
        R = self.ring
        return MorphismRM(R.m(a, R.a(x, y)), int(self.structure.dist_left[a, x, y]))

    def dist_right(self, x, y, a) -> MorphismRM:
        R = self.ring
        return MorphismRM(R.m(R.a(x, y), a), int(self.structure.dist_right[x, y, a]))

    def comm_inv(self, x, y) -> MorphismRM:
        return self.inverse(self.comm(x, y))

    def transpose4(self, p, q, s, t) -> MorphismRM:
        """(P+Q)+(S+T) -> (P+S)+(Q+T) as the fixed assoc/comm composite."""
        C = self
        inner = C.seq(C.inverse(C.assoc_add(q, s, t)),
                      C.oplus(C.comm_inv(q, s), C.identity(t)),
                      C.assoc_add(s, q, t))
        return C.seq(C.assoc_add(p, q, C.ring.a(s, t)),
                     C.oplus(C.identity(p), inner),
                     C.inverse(C.assoc_add(p, s, C.ring.a(q, t))))

    def seq(self, *ms: MorphismRM) -> MorphismRM:
        out = ms[0]
        for m in ms[1:]:
            out = self.compose(out, m)
        return out

    def is_regular(self) -> bool:
        """Commutativity constraint is the identity on every diagonal pair."""
        n = self.ring.order
        return not self.structure.add_comm[np.arange(n), np.arange(n)].any()


# -- morphism-level operation wrappers (module API) ---------------------------

def mor_compose(cat: CategoricalRing, a: MorphismRM, b: MorphismRM) -> MorphismRM:
    return cat.compose(a, b)


def mor_oplus(cat: CategoricalRing, a: MorphismRM, b: MorphismRM) -> MorphismRM:
    return cat.oplus(a, b)


def mor_otimes(cat: CategoricalRing, a: MorphismRM, b: MorphismRM) -> MorphismRM:
    return cat.otimes(a, b)


# -- coherence diagrams --------------------------------------------------------

def _diagrams(C: CategoricalRing):
    """Yield (name, args, path_a, path_b) over all object tuples.

    Derived unit diagrams (side triangles, zero-object squares) are theorems
    of the primary axioms; they are verified too, both as a safety net and
    so every normalization constraint is witnessed by a named diagram.
    """
    R = C.ring
    n = R.order
    rng = range(n)
    I = C.identity
    for w, x, y, z in itertools.product(rng, repeat=4):
        yield ("pentagon_add", (w, x, y, z),
               C.seq(C.assoc_add(R.a(w, x), y, z), C.assoc_add(w, x, R.a(y, z))),
               C.seq(C.oplus(C.assoc_add(w, x, y), I(z)), C.assoc_add(w, R.a(x, y), z),
                     C.oplus(I(w), C.assoc_add(x, y, z))))
        yield ("pentagon_mul", (w, x, y, z),
               C.seq(C.otimes(I(w), C.assoc_mul(x, y, z)), C.assoc_mul(w, R.m(x, y), z),
                     C.otimes(C.assoc_mul(w, x, y), I(z))),
               C.seq(C.assoc_mul(w, x, R.m(y, z)), C.assoc_mul(R.m(w, x), y, z)))
    for x, y, z in itertools.product(rng, repeat=3):
        yield ("hexagon_add", (x, y, z),
               C.seq(C.assoc_add(x, y, z), C.comm_inv(x, R.a(y, z)), C.assoc_add(y, z, x)),
               C.seq(C.oplus(C.comm_inv(x, y), I(z)), C.assoc_add(y, x, z),
                     C.oplus(I(y), C.comm_inv(x, z))))
    for x, y in itertools.product(rng, repeat=2):
        yield ("triangle_add", (x, y), C.assoc_add(x, 0, y), I(R.a(x, y)))
        yield ("triangle_add_left", (x, y), C.assoc_add(0, x, y), I(R.a(x, y)))
        yield ("triangle_add_right", (x, y), C.assoc_add(x, y, 0), I(R.a(x, y)))
        yield ("symmetry", (x, y), C.seq(C.comm(x, y), C.comm(y, x)), I(R.a(x, y)))
        u = R.unit
        yield ("triangle_mul", (x, y), C.assoc_mul(x, u, y), I(R.m(x, y)))
        yield ("triangle_mul_left", (x, y), C.assoc_mul(u, x, y), I(R.m(x, y)))
        yield ("triangle_mul_right", (x, y), C.assoc_mul(x, y, u), I(R.m(x, y)))
        yield ("unit_dist_left", (x, y), C.dist_left(u, x, y), I(R.a(x, y)))
        yield ("unit_dist_right", (x, y), C.dist_right(x, y, u), I(R.a(x, y)))
        yield ("zero_dist_left", (x, y), C.dist_left(0, x, y), I(0))
        yield ("zero_dist_right", (x, y), C.dist_right(x, y, 0), I(0))
        yield ("assoc_mul_zero_left", (x, y), C.assoc_mul(0, x, y), I(0))
        yield ("assoc_mul_zero_mid", (x, y), C.assoc_mul(x, 0, y), I(0))
        yield ("assoc_mul_zero_right", (x, y), C.assoc_mul(x, y, 0), I(0))
    for a, x in itertools.product(rng, repeat=2):
        yield ("mult_zero_left", (a, x), C.dist_left(a, 0, x), I(R.m(a, x)))
        yield ("mult_zero_right", (a, x), C.dist_left(a, x, 0), I(R.m(a, x)))
        yield ("mult_zero_left_r", (x, a), C.dist_right(0, x, a), I(R.m(x, a)))
        yield ("mult_zero_right_r", (x, a), C.dist_right(x, 0, a), I(R.m(x, a)))
    for a, x, y, z in itertools.product(rng, repeat=4):
        yield ("mult_add_assoc_left", (a, x, y, z),
               C.seq(C.otimes(I(a), C.assoc_add(x, y, z)), C.dist_left(a, x, R.a(y, z)),
                     C.oplus(I(R.m(a, x)), C.dist_left(a, y, z))),
               C.seq(C.dist_left(a, R.a(x, y), z),
                     C.oplus(C.dist_left(a, x, y), I(R.m(a, z))),
                     C.assoc_add(R.m(a, x), R.m(a, y), R.m(a, z))))
        yield ("mult_add_assoc_right", (x, y, z, a),
               C.seq(C.otimes(C.assoc_add(x, y, z), I(a)), C.dist_right(x, R.a(y, z), a),
                     C.oplus(I(R.m(x, a)), C.dist_right(y, z, a))),
               C.seq(C.dist_right(R.a(x, y), z, a),
                     C.oplus(C.dist_right(x, y, a), I(R.m(z, a))),
                     C.assoc_add(R.m(x, a), R.m(y, a), R.m(z, a))))
    for a, x, y in itertools.product(rng, repeat=3):
        yield ("mult_add_comm_left", (a, x, y),
               C.seq(C.otimes(I(a), C.comm_inv(x, y)), C.dist_left(a, y, x)),
               C.seq(C.dist_left(a, x, y), C.comm_inv(R.m(a, x), R.m(a, y))))
        yield ("mult_add_comm_right", (x, y, a),
               C.seq(C.otimes(C.comm_inv(x, y), I(a)), C.dist_right(y, x, a)),
               C.seq(C.dist_right(x, y, a), C.comm_inv(R.m(x, a), R.m(y, a))))
    for a, b, x, y in itertools.product(rng, repeat=4):
        yield ("dist_compat_left", (a, b, x, y),
               C.seq(C.assoc_mul(a, b, R.a(x, y)), C.dist_left(R.m(a, b), x, y)),
               C.seq(C.otimes(I(a), C.dist_left(b, x, y)),
                     C.dist_left(a, R.m(b, x), R.m(b, y)),
                     C.oplus(C.assoc_mul(a, b, x), C.assoc_mul(a, b, y))))
        yield ("dist_compat_right", (x, y, a, b),
               C.seq(C.dist_right(x, y, R.m(a, b)),
                     C.oplus(C.assoc_mul(x, a, b), C.assoc_mul(y, a, b))),
               C.seq(C.assoc_mul(R.a(x, y), a, b),
                     C.otimes(C.dist_right(x, y, a), I(b)),
                     C.dist_right(R.m(x, a), R.m(y, a), b)))
        yield ("dist_compat_mixed", (a, x, y, b),
               C.seq(C.otimes(I(a), C.dist_right(x, y, b)),
                     C.dist_left(a, R.m(x, b), R.m(y, b)),
                     C.oplus(C.assoc_mul(a, x, b), C.assoc_mul(a, y, b))),
               C.seq(C.assoc_mul(a, R.a(x, y), b),
                     C.otimes(C.dist_left(a, x, y), I(b)),
                     C.dist_right(R.m(a, x), R.m(a, y), b)))
        yield ("dist_interchange", (a, b, x, y),
               C.seq(C.dist_left(R.a(a, b), x, y),
                     C.oplus(C.dist_right(a, b, x), C.dist_right(a, b, y)),
                     C.transpose4(R.m(a, x), R.m(b, x), R.m(a, y), R.m(b, y))),
               C.seq(C.dist_right(a, b, R.a(x, y)),
                     C.oplus(C.dist_left(a, x, y), C.dist_left(b, x, y))))


@dataclass
class DiagramViolation:
    diagram: str
    args: tuple[int, ...]
    residual: tuple[int, ...]

    def __str__(self):
        return f"{self.diagram} at {self.args}: residual {self.residual}"


@dataclass
class CoherenceReport:
    violations: list[DiagramViolation]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self):
        if self.ok:
            return "PASS"
        head = "; ".join(str(v) for v in self.violations[:5])
        more = len(self.violations) - 5
        return head + (f"; ... {more} more" if more > 0 else "")


def verify_coherence(cat: CategoricalRing, find_first=False) -> CoherenceReport:
    """Evaluate every axiom diagram at every object tuple."""
    module = cat.module
    violations = []
    for name, args, pa, pb in _diagrams(cat):
        if pa.obj != pb.obj:
            raise AssertionError(f"diagram {name}{args}: object mismatch {pa.obj} vs {pb.obj}")
        if pa.label != pb.label:
            resid = module.add(pa.label, module.neg(pb.label))
            violations.append(DiagramViolation(name, args, module.to_tuple(resid)))
            if find_first:
                return CoherenceReport(violations)
    violations.sort(key=lambda v: (v.diagram, v.args))
    return CoherenceReport(violations)
