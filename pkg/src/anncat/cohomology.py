"""Cocycle, coboundary and cohomology groups of the normalized complex,
class comparison, and the classification of coherent structures.

All subgroups live in the coordinate space of a CochainBasis; kernels come
from the modular elimination in intlinalg, canonical forms and quotients
from integer lattice normal forms.  Representatives are always the
lexicographically least member of their coset.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bimodules import Bimodule
from .cochains import Cochain2, Cochain3, CochainBasis, delta_matrix, delta1, delta2
from .groups import (FiniteAbelianGroup, GroupHom, quotient_of_lattices,
                     subgroup_lattice)
from .intlinalg import (express_in_hermite, kernel_mod, lex_least_in_coset,
                        solve_affine_mod)
from .relations import is_cocycle3, relation_matrix
from . import guards


@dataclass
class Subgroup:
    """A subgroup of a normalized cochain group, in basis coordinates."""
    basis: CochainBasis
    group: FiniteAbelianGroup
    gen_cols: list[list[int]]
    raw_gens: np.ndarray
    lattice: list[list[int]] = field(repr=False)

    @property
    def order(self) -> int:
        return self.group.order

    def contains(self, vec) -> bool:
        return express_in_hermite(self.lattice, [int(v) for v in vec]) is not None

    def element_vector(self, element) -> np.ndarray:
        m = self.basis.moduli
        v = np.zeros(len(m), dtype=np.int64)
        for coeff, col in zip(element, self.gen_cols):
            v = (v + int(coeff) * np.array(col, dtype=np.int64)) % np.maximum(m, 1)
        return v

    def element_cochain(self, element):
        return self.basis.decode(self.element_vector(element))

    def embedding_hom(self) -> GroupHom:
        mat = [[col[i] for col in self.gen_cols] for i in range(self.basis.num_coords)]
        return GroupHom(self.group, self.basis.group, mat)


def _subgroup_from_gens(basis: CochainBasis, gens: np.ndarray) -> Subgroup:
    cols = [gens[:, j].tolist() for j in range(gens.shape[1])] if gens.size else []
    lattice = subgroup_lattice(cols, basis.group)
    moduli_lattice = subgroup_lattice([], basis.group)
    group, gen_cols = quotient_of_lattices(lattice, moduli_lattice, basis.group)
    return Subgroup(basis, group, gen_cols, gens, lattice)


def cocycle_group(level: int, module: Bimodule, guard: int | None = None) -> Subgroup:
    """Z^level as a subgroup of the normalized cochain group.

    Level 3 is the kernel of the relation homomorphism (relations 1..17 as
    linear constraints plus the regularity rows); level 2 is ker(delta2).
    """
    if level == 3:
        basis = CochainBasis(3, module, guard)
        rows, row_moduli = relation_matrix(basis, include_regularity=True)
        gens = kernel_mod(rows, row_moduli, basis.moduli)
        return _subgroup_from_gens(basis, gens)
    if level == 2:
        src, dst, A = delta_matrix(2, module, guard)
        gens = kernel_mod(A, dst.moduli, src.moduli)
        return _subgroup_from_gens(src, gens)
    raise ValueError("cocycle groups are computed at level 2 or 3")


def coboundary_group(level: int, module: Bimodule, guard: int | None = None) -> Subgroup:
    """B^level = image of the differential from one level down."""
    if level not in (2, 3):
        raise ValueError("coboundary groups are computed at level 2 or 3")
    src, dst, A = delta_matrix(level - 1, module, guard)
    gens = A % np.maximum(dst.moduli[:, None], 1) if A.size else A
    return _subgroup_from_gens(dst, gens)


def z1_group(module: Bimodule, guard: int | None = None) -> "CohomologyGroup":
    """Kernel of delta1 inside the normalized degree-1 group."""
    src, dst, A = delta_matrix(1, module, guard)
    gens = kernel_mod(A, dst.moduli, src.moduli)
    Z = _subgroup_from_gens(src, gens)
    B = _subgroup_from_gens(src, np.zeros((src.num_coords, 0), dtype=np.int64))
    return CohomologyGroup(group=Z.group, level=1, module=module,
                           cocycles=Z, coboundaries=B, gen_cols=Z.gen_cols)


@dataclass
class CohomologyGroup:
    """Cohomology presented by invariant factors plus coset representatives."""
    group: FiniteAbelianGroup
    level: int
    module: Bimodule
    cocycles: Subgroup
    coboundaries: Subgroup
    gen_cols: list[list[int]]

    @property
    def order(self) -> int:
        return self.group.order

    def representative_vector(self, element) -> np.ndarray:
        basis = self.cocycles.basis
        m = basis.moduli
        v = np.zeros(len(m), dtype=np.int64)
        for coeff, col in zip(element, self.gen_cols):
            v = (v + int(coeff) * np.array(col, dtype=np.int64)) % np.maximum(m, 1)
        return lex_least_in_coset(v, self.coboundaries.raw_gens, m)

    def representative(self, element):
        return self.cocycles.basis.decode(self.representative_vector(element))

    def representatives(self):
        for el in self.group.elements():
            yield el, self.representative(el)

    def class_of(self, cochain) -> tuple[int, ...]:
        """Invariant-factor coordinates of a cocycle's class."""
        basis = self.cocycles.basis
        v = basis.encode(cochain)
        k = len(self.gen_cols)
        cols = self.gen_cols + [self.coboundaries.raw_gens[:, j].tolist()
                                for j in range(self.coboundaries.raw_gens.shape[1])]
        if not cols:
            if v.any():
                raise ValueError("cochain is not a cocycle of this group")
            return self.group.zero()
        L = 1
        for d in basis.moduli.tolist() or [1]:
            L = L * d // math.gcd(L, d)
        A = np.array([[c[i] for c in cols] for i in range(basis.num_coords)], dtype=np.int64)
        x, _ = solve_affine_mod(A, v, basis.moduli, [L] * len(cols))
        if x is None:
            raise ValueError("cochain is not a cocycle of this group")
        facs = self.group.invariant_factors
        return tuple(int(x[i]) % facs[i] for i in range(k))


def cohomology_group(level: int, module: Bimodule, guard: int | None = None) -> CohomologyGroup:
    Z = cocycle_group(level, module, guard)
    B = coboundary_group(level, module, guard)
    for j in range(B.raw_gens.shape[1]):
        if not Z.contains(B.raw_gens[:, j]):
            raise AssertionError("coboundary outside the cocycle group")
    group, gen_cols = quotient_of_lattices(Z.lattice, B.lattice, Z.basis.group)
    return CohomologyGroup(group=group, level=level, module=module,
                           cocycles=Z, coboundaries=B, gen_cols=gen_cols)


@dataclass
class ClassDecision:
    same: bool
    witness: Cochain2 | None   # delta2(witness) = f - f2 when same

    def __bool__(self):
        return self.same


def same_class(f: Cochain3, f2: Cochain3, guard: int | None = None) -> ClassDecision:
    """Decide congruence of two 3-cocycles; the witness is lex-least."""
    for g in (f, f2):
        rep = is_cocycle3(g, find_first=True)
        if not rep.ok:
            raise ValueError(f"input is not a 3-cocycle: {rep}")
    module = f.module
    src, dst, A = delta_matrix(2, module, guard)
    target = dst.encode(f.sub(f2))
    x, kernel = solve_affine_mod(A, target, dst.moduli, src.moduli)
    if x is None:
        return ClassDecision(False, None)
    x = lex_least_in_coset(x, kernel, src.moduli)
    return ClassDecision(True, src.decode(x))


def classify_structures(module: Bimodule, guard: int | None = None):
    """One coherent structure per cohomology class (the dist_left flip of
    each cocycle representative); list length is the order of H^3."""
    from .category import CategoricalRing, verify_coherence
    H = cohomology_group(3, module, guard)
    guards.check_stream("H^3 classification", H.order, guard)
    out = []
    for el, rep in H.representatives():
        cat = CategoricalRing.of_cocycle(rep)
        out.append(cat)
    return H, out
