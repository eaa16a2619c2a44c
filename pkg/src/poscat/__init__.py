"""Finite posets, the simplex category, nerves, colimits, and Kan extensions."""

from ._kernels import backend as kernel_backend
from .colimits import (
    Cocone,
    ColimitError,
    PosetDiagram,
    SubcategoryError,
    colimit_delta,
    colimit_pos,
    colimit_tos,
    verify_universal,
)
from .continuity import (
    BoundError,
    ContinuityError,
    ContinuityReport,
    check_antisymmetry,
    check_chain_condition,
    check_continuity,
    check_degeneracy_formulas,
    check_face_formulas,
    check_relation_injective,
    density_colimit,
    extract_order,
    fully_faithful_witness,
    reconstruct,
)
from .corpus import all_posets, poset_classes
from .delta import (
    DeltaError,
    DeltaMap,
    GeneratorWord,
    compose,
    degeneracy,
    face,
    factorize,
    generator,
    identity_delta,
    paper_pushout_square,
    verify_simplicial_identities,
)
from .kan import (
    ExtensionResult,
    FunctorPresentation,
    KanError,
    StabilizationError,
    check_extension_cocontinuity,
    comma_diagram,
    extend,
    extend_map,
    inclusion_functor,
    product_functor,
    underlying_set_functor,
)
from .posets import (
    CycleError,
    FinPoset,
    MonotoneMap,
    NotSplitMonoError,
    PosetError,
    antichain_poset,
    chain_poset,
    chains,
    count_monotone_maps,
    empty_poset,
    find_isomorphism,
    intersection_of_extensions,
    isomorphisms,
    linear_extensions,
    make_poset,
    monotone_maps,
    ordinal_poset,
    product_poset,
    split_retraction,
)
from .simplicial import (
    SimplicialError,
    SimplicialIdentityError,
    SimplicialMap,
    TruncatedSimplicialSet,
    evaluate,
    make_sset,
    nerve,
    nerve_map,
    simplicial_maps,
)

__version__ = "0.1.0"
