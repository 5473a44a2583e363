"""Exact-arithmetic toolkit for low-dimensional cohomology of finite rings
with bimodule coefficients, coherence verification of skeletal categorical
rings, functor classification, and ring-extension obstructions."""

from .groups import FiniteAbelianGroup, GroupHom, subquotient
from .intlinalg import smith_normal_form
from .rings import (FiniteRing, Rng, RingAxiomError, cyclic_ring, dual_numbers,
                    null_ring, product_ring, ring_from_tables, ring_isomorphism,
                    scaled_cyclic_rng)
from .bimodules import (Bimodule, BimoduleAxiomError, bimodule_from_tables,
                        pullback_bimodule, reduction_bimodule, regular_bimodule,
                        trivial_bimodule)
from .cochains import (AnnStructure, Cochain1, Cochain2, Cochain3, CochainBasis,
                       delta1, delta2)
from .relations import is_ann_structure, is_cocycle3, relation_residuals
from .category import (CategoricalRing, MorphismRM, mor_compose, mor_oplus,
                       mor_otimes, verify_coherence)
from .cohomology import (CohomologyGroup, classify_structures, coboundary_group,
                         cocycle_group, cohomology_group, same_class, z1_group)
from .functors import (RingFunctor, aut_functor, congruent, enumerate_regular_functors,
                       exists_ann_functor, is_ann_functor, pushforward_pullback)
from .extension import (Bimultiplication, BimultRing, RegularHomTheta, bicenter,
                        build_extension, enumerate_bimultiplications, is_regular_hom,
                        obstruction)
from .guards import SizeGuardError

__all__ = [n for n in dir() if not n.startswith("_")]
__version__ = "0.1.0"
