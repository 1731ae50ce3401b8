"""Rado simplicial complexes: explicit and inductive constructions, ampleness
checks, back-and-forth extension and random complexes."""

from rado.core import (
    EMPTY,
    Complex,
    LazyComplex,
    SimplicialComplex,
    SubcomplexRelation,
    complex_union,
    cone,
    delete_star,
    enumerate_subcomplexes,
    external_d,
    external_simplexes,
    facets,
    from_facets,
    induced,
    is_isomorphic_small,
    link,
    make_simplex,
    materialize,
)
from rado.errors import (
    ApexCollisionError,
    DObstructionError,
    LabelTooLargeError,
    NotASimplexError,
    RadoError,
    SizeLimitError,
    SubcomplexError,
    ValidationError,
    WitnessNotFoundError,
    WitnessUnavailableError,
)
from rado.rado_arith import ArithmeticRado
from rado.rado_grow import GrowthRecord, grow, witness_lookup
from rado.ample import (
    PartialIsomorphism,
    WitnessQuery,
    back_and_forth,
    embed_complex,
    extend_by_cone,
    find_witness,
    find_witness_d,
    has_induced_boundary,
    is_ample_window,
)
from rado.randomness import (
    CylinderSet,
    ProbabilitySystem,
    cylinder_measure,
    induced_measure,
    lemma21_bruteforce,
    lemma21_sum,
    p_of_subcomplex,
    random_complex,
    sample_complex,
    sample_induced,
)

__version__ = "0.1.0"
