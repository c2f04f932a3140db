"""Finite categories, local right adjoints, orthogonality and cone locality.

The library works on explicit composition tables. Most entry points take a
``FinCategory`` or a ``FinFunctor`` and return small frozen records.
"""
from .catalog import (
    chain,
    constant_functor,
    cospan,
    cospan_collapse,
    discrete,
    parallel_pair,
    poset,
    span,
    terminal_category,
    v_inclusion,
    v_poset,
    walking_arrow,
)
from .cones import ConeRecord, cocones, colimit, cones, limit, make_diagram, pullback_cone, pushout_cocone
from .connectivity import (
    Absent,
    Check,
    ComponentPartition,
    MultiInitialFamily,
    connected_components,
    initial_objects,
    is_connected,
    is_weakly_initial,
    multi_initial_family,
    multi_terminal_family,
    terminal_objects,
)
from .core import (
    FinCategory,
    FinFunctor,
    NatTrans,
    arrow_category,
    comma,
    compose_functors,
    coslice_category,
    find_functors,
    full_subcategory,
    identity_functor,
    is_faithful,
    is_full,
    opposite,
    opposite_functor,
    slice_category,
    subcategory,
    validate_category,
    validate_functor,
    validate_nat_trans,
)
from .dsl import Workspace, parse, parse_file, print_workspace
from .errors import *  # noqa: F401,F403
from .families import (
    FamilyMorphism,
    FinFamily,
    family,
    family_compose,
    family_hom,
    family_product,
    pi_functor,
    relative_left_adjoint,
    verify_pi_adjunction,
)
from .gamma import (
    ConeSpec,
    GammaClass,
    build_B_gamma,
    gamma_class,
    is_gamma_local,
    is_strongly_gamma_local,
    verify_gamma_theorem,
)
from .lrgeometry import classify_lr, costable_inclusion_check, lprime_forms, stalkwise_classify
from .multiadjoint import (
    all_local_units,
    beck_chevalley,
    beck_chevalley_all,
    conerve_decomposition,
    is_local_right_adjoint,
    is_right_multi_adjoint,
    local_left_adjoint,
    local_units,
)
from .multilimits import multicolimit, multilimit, multireflective_multicolimit, preserves_multilimits
from .orthogonality import (
    MorphismClass,
    candidate_rigidity,
    candidates,
    factor_via_classes,
    is_candidate,
    is_relatively_full_faithful,
    is_stable,
    lift,
    morphism_class,
    orthogonal,
    saturate,
    stable_factorization,
    validate_factorization_system,
)

__version__ = "0.1.0"
