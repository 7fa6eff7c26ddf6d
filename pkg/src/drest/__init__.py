"""Finite difference-restriction algebras, their dual spaces, and completions."""

from .pfun import (
    Carrier,
    ConcretePFAlgebra,
    PartialFunction,
    closure_generate,
    enumerate_all_pfs,
    pf_compatible,
    pf_difference,
    pf_meet,
    pf_override,
    pf_restrict,
    pf_union_if_compatible,
)
from .dra import (
    AlgebraMap,
    FiniteAlgebra,
    OpTable,
    bottom,
    compatible,
    derived_meet,
    from_concrete,
    hom_check,
    is_fin_compatibly_complete,
    is_proper_hom,
    is_subtraction_algebra,
    isomorphism_search,
    join_if_exists,
    leq,
    validate_axioms,
)
from .filters import (
    MaxFilterSpace,
    all_proper_filters,
    filter_domain_rel,
    filter_equiv,
    hat,
    is_filter,
    is_proper_filter,
    maximal_filters,
)
from .duality import (
    DualAlgebra,
    EtaleSpace,
    F_morphism,
    F_object,
    G_morphism,
    G_object,
    SpaceMorphism,
    check_triangle_identities,
    complete,
    completion_characterizations,
    counit_lambda,
    space_morphism,
    stone_restriction_checks,
    unique_completion_iso,
    unit_eta,
    validate_etale,
)
from .operators import (
    SpaceRelation,
    check_additive,
    check_compat_preserving,
    check_eta_preserves_operator,
    check_morphism_back_forth,
    check_normal,
    check_relation_properties,
    classify_concrete_ops,
    classify_operator,
    complete_with_operators,
    operation_from_relation,
    relation_from_operator,
)
from .fixtures import FIXTURES, Fixture, get_fixture

__version__ = "0.1.0"
