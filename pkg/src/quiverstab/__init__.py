"""quiverstab: exact stability landscape of Dynkin and Euclidean quivers.

Canonical decompositions/presentations of integer vectors, the cp-fan,
the regular cone with its facets, semi-stable subcategory descriptors,
ss/cp-equivalence of weights, and the classification of intersections of
semi-stable subcategories — all in exact arithmetic, certified against a
randomized module-level oracle over a large prime field.
"""

from .candecomp import (CanonicalPresentation, Summand, canonical_decomposition,
                        canonical_presentation, cp_equivalent, verify_fan_point)
from .cones import RationalCone
from .errors import (CertificationError, InvalidQuiverError, InvariantViolation,
                     QuiverStabError, UnsupportedClassError)
from .homext import (enumerate_real_schur_roots, ext_generic, generic_subs,
                     hom_generic, is_real_root, is_schur_root)
from .intersections import (IntersectionResult, RegularPart, TubeThick,
                            enumerate_nonss, intersect_ss, tube_intersect)
from .oracle import (DEFAULT_PRIME, SampledRep, decompose, module_ext_dim,
                     module_hom_dim, oracle_ext, oracle_hom, projective_rep,
                     relative_simples, sample_generic)
from .quiver import (DYNKIN, EUCLIDEAN, WILD, EulerContext, Quiver,
                     atilde_quiver, build_context, dtilde4_quiver,
                     kronecker_quiver, linear_quiver, square_quiver)
from .regular import (Arc, TubeModel, arc_dim, compute_tubes, facets_and_cones,
                      orbit_OT, quasi_simple_dependencies, root_to_arc,
                      tube_ext, tube_hom)
from .stability import (SSDescriptor, hss_contains, hyp_profile, in_C_I,
                        ss_descriptor, ss_equivalent)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
