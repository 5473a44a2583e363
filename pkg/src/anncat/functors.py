"""Structure-preserving functors between skeletal categorical rings:
existence, enumeration up to congruence, and automorphism groups.

A functor is a ring-homomorphism pair (f0, f1) plus compatibility labels
(mu, nu) forming a degree-2 cochain over the source ring with coefficients
in the pulled-back target module.  Validity is checked by compiling the
compatibility diagrams in the target category; the equivalent differential
equation delta2(mu, nu) = push(f) - pull(f') is exercised as a derived
identity in the tests.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bimodules import Bimodule, pullback_bimodule
from .category import CategoricalRing, MorphismRM
from .cochains import Cochain1, Cochain2, Cochain3, CochainBasis, delta_matrix, ctx_of
from .cohomology import CohomologyGroup, cohomology_group, z1_group
from .intlinalg import lex_least_in_coset, solve_affine_mod


class FunctorError(ValueError):
    pass


def check_hom_pair(source: CategoricalRing, target: CategoricalRing, f0, f1):
    """Validate the ring-homomorphism pair and return the pulled-back module."""
    R, Rp = source.ring, target.ring
    M, Mp = source.module, target.module
    f0 = np.asarray(f0, dtype=np.int64)
    f1 = np.asarray(f1, dtype=np.int64)
    if f0.shape != (R.order,) or f1.shape != (M.size,):
        raise FunctorError("f0/f1 table shapes do not match the rings/modules")
    if f0[0] != 0 or f0[R.unit] != Rp.unit:
        raise FunctorError("f0 must preserve zero and unit")
    for x in range(R.order):
        for y in range(R.order):
            if f0[R.a(x, y)] != Rp.a(int(f0[x]), int(f0[y])):
                raise FunctorError(f"f0 not additive at {(x, y)}")
            if f0[R.m(x, y)] != Rp.m(int(f0[x]), int(f0[y])):
                raise FunctorError(f"f0 not multiplicative at {(x, y)}")
    if f1[0] != 0:
        raise FunctorError("f1 must preserve zero")
    for a in range(M.size):
        for b in range(M.size):
            if f1[M.add(a, b)] != Mp.add(int(f1[a]), int(f1[b])):
                raise FunctorError(f"f1 not additive at {(a, b)}")
    for s in range(R.order):
        for u in range(M.size):
            if f1[M.act_left(s, u)] != Mp.act_left(int(f0[s]), int(f1[u])):
                raise FunctorError(f"f1 incompatible with left action at {(s, u)}")
            if f1[M.act_right(u, s)] != Mp.act_right(int(f1[u]), int(f0[s])):
                raise FunctorError(f"f1 incompatible with right action at {(u, s)}")
    return pullback_bimodule(f0, R, Mp)


@dataclass
class RingFunctor:
    source: CategoricalRing
    target: CategoricalRing
    f0: np.ndarray
    f1: np.ndarray
    labels: Cochain2           # (mu, nu) over the pulled-back module

    def __post_init__(self):
        self.f0 = np.asarray(self.f0, dtype=np.int64)
        self.f1 = np.asarray(self.f1, dtype=np.int64)
        self.pullback = check_hom_pair(self.source, self.target, self.f0, self.f1)
        if self.labels.module.group != self.pullback.group:
            raise FunctorError("compatibility labels must live in the pulled-back module")

    @classmethod
    def identity(cls, cat: CategoricalRing) -> "RingFunctor":
        pb = pullback_bimodule(np.arange(cat.ring.order), cat.ring, cat.module)
        return cls(cat, cat, np.arange(cat.ring.order), np.arange(cat.module.size),
                   Cochain2.zero(pb))

    # image of a source morphism
    def of(self, m: MorphismRM) -> MorphismRM:
        return MorphismRM(int(self.f0[m.obj]), int(self.f1[m.label]))

    def add_label(self, x: int, y: int) -> MorphismRM:
        """F(x+y) -> Fx (+) Fy."""
        Rp = self.target.ring
        return MorphismRM(Rp.a(int(self.f0[x]), int(self.f0[y])),
                          int(self.labels.add_part[x, y]))

    def mul_label(self, x: int, y: int) -> MorphismRM:
        """F(xy) -> Fx (x) Fy."""
        Rp = self.target.ring
        return MorphismRM(Rp.m(int(self.f0[x]), int(self.f0[y])),
                          int(self.labels.mul_part[x, y]))


@dataclass
class FunctorViolation:
    diagram: str
    args: tuple[int, ...]
    residual: tuple[int, ...]

    def __str__(self):
        return f"{self.diagram} at {self.args}: residual {self.residual}"


@dataclass
class FunctorReport:
    violations: list[FunctorViolation]

    @property
    def ok(self):
        return not self.violations


def _functor_diagrams(F: RingFunctor):
    src, tgt = F.source, F.target
    R = src.ring
    C = tgt
    n = R.order
    f0 = F.f0
    I = C.identity
    rng = range(n)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                yield ("compat_add_assoc", (x, y, z),
                       C.seq(F.of(src.assoc_add(x, y, z)), F.add_label(x, R.a(y, z)),
                             C.oplus(I(f0[x]), F.add_label(y, z))),
                       C.seq(F.add_label(R.a(x, y), z), C.oplus(F.add_label(x, y), I(f0[z])),
                             tgt.assoc_add(f0[x], f0[y], f0[z])))
                yield ("compat_mul_assoc", (x, y, z),
                       C.seq(F.of(src.assoc_mul(x, y, z)), F.mul_label(R.m(x, y), z),
                             C.otimes(F.mul_label(x, y), I(f0[z]))),
                       C.seq(F.mul_label(x, R.m(y, z)), C.otimes(I(f0[x]), F.mul_label(y, z)),
                             tgt.assoc_mul(f0[x], f0[y], f0[z])))
                yield ("compat_dist_left", (x, y, z),
                       C.seq(F.of(src.dist_left(x, y, z)), F.add_label(R.m(x, y), R.m(x, z)),
                             C.oplus(F.mul_label(x, y), F.mul_label(x, z))),
                       C.seq(F.mul_label(x, R.a(y, z)), C.otimes(I(f0[x]), F.add_label(y, z)),
                             tgt.dist_left(f0[x], f0[y], f0[z])))
                yield ("compat_dist_right", (x, y, z),
                       C.seq(F.of(src.dist_right(x, y, z)), F.add_label(R.m(x, z), R.m(y, z)),
                             C.oplus(F.mul_label(x, z), F.mul_label(y, z))),
                       C.seq(F.mul_label(R.a(x, y), z), C.otimes(F.add_label(x, y), I(f0[z])),
                             tgt.dist_right(f0[x], f0[y], f0[z])))
            yield ("compat_comm", (x, y),
                   C.seq(F.of(src.comm_inv(x, y)), F.add_label(y, x)),
                   C.seq(F.add_label(x, y), tgt.comm_inv(f0[x], f0[y])))


def is_ann_functor(F: RingFunctor, find_first=False) -> FunctorReport:
    module = F.pullback
    violations = []
    for name, args, pa, pb in _functor_diagrams(F):
        if pa.obj != pb.obj:
            raise AssertionError(f"{name}{args}: object mismatch")
        if pa.label != pb.label:
            resid = module.add(pa.label, module.neg(pb.label))
            violations.append(FunctorViolation(name, args, module.to_tuple(resid)))
            if find_first:
                return FunctorReport(violations)
    violations.sort(key=lambda v: (v.diagram, v.args))
    return FunctorReport(violations)


def pushforward_pullback(f0, f1, f: Cochain3, f2: Cochain3,
                         pullback: Bimodule) -> tuple[Cochain3, Cochain3]:
    """(f_*, f2^*): coefficients through f1, arguments through f0."""
    f0 = np.asarray(f0, dtype=np.int64)
    f1 = np.asarray(f1, dtype=np.int64)
    push = Cochain3(pullback, f1[f.add_assoc], f1[f.add_comm], f1[f.mul_assoc],
                    f1[f.dist_left], f1[f.dist_right])
    pull = Cochain3(pullback,
                    f2.add_assoc[f0[:, None, None], f0[None, :, None], f0[None, None, :]],
                    f2.add_comm[f0[:, None], f0[None, :]],
                    f2.mul_assoc[f0[:, None, None], f0[None, :, None], f0[None, None, :]],
                    f2.dist_left[f0[:, None, None], f0[None, :, None], f0[None, None, :]],
                    f2.dist_right[f0[:, None, None], f0[None, :, None], f0[None, None, :]])
    return push, pull


def _difference_cochain(source: CategoricalRing, target: CategoricalRing, f0, f1,
                        pullback: Bimodule) -> Cochain3:
    fc = source.structure.flip()      # cocycle data of each category
    fc2 = target.structure.flip()
    push, pull = pushforward_pullback(f0, f1, fc, fc2, pullback)
    return push.sub(pull)


def exists_ann_functor(source: CategoricalRing, target: CategoricalRing, f0, f1,
                       guard: int | None = None):
    """Lex-least compatibility labels, or the nonzero obstruction class.

    Returns (functor, None) on success and (None, (H3_group, class)) when the
    difference cochain is not a coboundary.
    """
    pb = check_hom_pair(source, target, f0, f1)
    diff = _difference_cochain(source, target, f0, f1, pb)
    src, dst, A = delta_matrix(2, pb, guard)
    x, kernel = solve_affine_mod(A, dst.encode(diff), dst.moduli, src.moduli)
    if x is None:
        H = cohomology_group(3, pb, guard)
        cls = H.class_of(diff)
        if not any(cls):
            raise AssertionError("unsolvable difference with zero class")
        return None, (H, cls)
    x = lex_least_in_coset(x, kernel, src.moduli)
    F = RingFunctor(source, target, f0, f1, src.decode(x))
    return F, None


def enumerate_regular_functors(source: CategoricalRing, target: CategoricalRing, f0, f1,
                               guard: int | None = None):
    """One functor per H^2 class over a pair with matching induced cocycles.

    Errors when push(f) != pull(f'), reporting the nonzero difference.
    """
    pb = check_hom_pair(source, target, f0, f1)
    diff = _difference_cochain(source, target, f0, f1, pb)
    if not diff.is_zero():
        raise FunctorError("pair is not regular: push(f) - pull(f') is nonzero")
    H2 = cohomology_group(2, pb, guard)
    out = []
    for el, rep in H2.representatives():
        out.append(RingFunctor(source, target, f0, f1, rep))
    return H2, out


def ann_morphism_valid(F: RingFunctor, G: RingFunctor, alpha: Cochain1) -> bool:
    """The two compatibility squares of a morphism of functors, compiled."""
    if not (np.array_equal(F.f0, G.f0) and np.array_equal(F.f1, G.f1)):
        return False
    C = F.target
    R = F.source.ring
    n = R.order
    a = alpha.values
    f0 = F.f0
    for x in range(n):
        for y in range(n):
            ax = MorphismRM(int(f0[x]), int(a[x]))
            ay = MorphismRM(int(f0[y]), int(a[y]))
            axy = MorphismRM(int(f0[R.a(x, y)]), int(a[R.a(x, y)]))
            lhs = C.seq(F.add_label(x, y), C.oplus(ax, ay))
            rhs = C.seq(axy, G.add_label(x, y))
            if lhs != rhs:
                return False
            amul = MorphismRM(int(f0[R.m(x, y)]), int(a[R.m(x, y)]))
            lhs = C.seq(F.mul_label(x, y), C.otimes(ax, ay))
            rhs = C.seq(amul, G.mul_label(x, y))
            if lhs != rhs:
                return False
    return True


def congruent(F: RingFunctor, G: RingFunctor, guard: int | None = None):
    """Lex-least morphism F -> G (a degree-1 cochain), or None."""
    if not (np.array_equal(F.f0, G.f0) and np.array_equal(F.f1, G.f1)):
        return None
    pb = F.pullback
    diff = G.labels.sub(F.labels)
    src, dst, A = delta_matrix(1, pb, guard)
    x, kernel = solve_affine_mod(A, dst.encode(diff), dst.moduli, src.moduli)
    if x is None:
        return None
    x = lex_least_in_coset(x, kernel, src.moduli)
    alpha = src.decode(x)
    assert ann_morphism_valid(F, G, alpha), "solver witness must satisfy the squares"
    return alpha


def aut_functor(F: RingFunctor, guard: int | None = None) -> CohomologyGroup:
    """Automorphism group of a functor: degree-1 cocycles over the pullback,
    with composition corresponding to addition."""
    return z1_group(F.pullback, guard)
