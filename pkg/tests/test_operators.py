"""Operator checks, dual relations, and the concrete catalogue."""
from __future__ import annotations

import pytest

from drest.dra import OpTable, binary_table, bottom, from_concrete, derived_meet
from drest.duality import F_object, counit_lambda, identity_morphism
from drest.filters import hat, maximal_filters
from drest.fixtures import (
    boolean_four,
    conflicting_pair,
    disjoint_pair,
    single_point,
)
from drest.operators import (
    OperatorCheckError,
    SpaceRelation,
    apply_relation,
    check_additive,
    check_compat_preserving,
    check_eta_preserves_operator,
    check_morphism_back_forth,
    check_normal,
    check_relation_properties,
    check_union_commutation,
    classify_concrete_ops,
    classify_operator,
    complete_with_operators,
    operation_from_relation,
    relation_from_operator,
)
from drest.pfun import Carrier, PartialFunction, closure_generate


def meet_table(algebra) -> OpTable:
    return binary_table("meet", algebra.n, lambda x, y: derived_meet(algebra, x, y))


def domain_algebra(fixture):
    alg = from_concrete(fixture.concrete, extra_ops=("domain",))
    return alg.with_ops(()), alg.op("domain")


# ---------------------------------------------------------------------------
# the three defining properties

def test_meet_is_a_compat_preserving_operator_everywhere():
    for fixture in (single_point(), disjoint_pair(), conflicting_pair(), boolean_four()):
        alg = fixture.algebra
        report = classify_operator(alg, meet_table(alg))
        assert report.is_compat_preserving_operator, report.witnesses


def test_domain_is_a_compat_preserving_operator():
    for fixture in (disjoint_pair(), conflicting_pair(), boolean_four()):
        alg, d = domain_algebra(fixture)
        report = classify_operator(alg, d)
        assert report.is_compat_preserving_operator, report.witnesses


def test_constant_bottom_operator():
    alg = disjoint_pair().algebra
    table = OpTable("zero", 1, alg.n, (bottom(alg),) * alg.n)
    report = classify_operator(alg, table)
    assert report.is_compat_preserving_operator


def test_normality_mutant_is_caught():
    alg = disjoint_pair().algebra
    a = alg.index("{0:0}")
    entries = list(range(alg.n))
    entries[bottom(alg)] = a
    ok, witness = check_normal(alg, OpTable("bad", 1, alg.n, tuple(entries)))
    assert not ok and witness == (bottom(alg),)


def test_override_table_fails_the_checks():
    alg = from_concrete(conflicting_pair().concrete, extra_ops=("override",))
    report = classify_operator(alg.with_ops(()), alg.op("override"))
    assert not report.compat_preserving
    assert not report.normal
    assert report.witnesses


def test_additivity_skips_missing_joins():
    # on an incomplete algebra the additivity scan must not demand joins
    alg = disjoint_pair().algebra
    ok, _ = check_additive(alg, meet_table(alg))
    assert ok


def test_caps_are_enforced():
    alg = disjoint_pair().algebra
    with pytest.raises(OperatorCheckError):
        check_compat_preserving(alg, OpTable("big", 4, alg.n, (0,) * alg.n**4))


# ---------------------------------------------------------------------------
# relations

def test_relation_from_domain_operator_is_diagonal_on_points():
    alg, d = domain_algebra(disjoint_pair())
    rel = relation_from_operator(alg, d)
    assert rel.tuples == frozenset({(0, 0), (1, 1)})


def test_relation_from_constant_bottom_is_empty():
    alg = disjoint_pair().algebra
    table = OpTable("zero", 1, alg.n, (bottom(alg),) * alg.n)
    rel = relation_from_operator(alg, table)
    assert rel.tuples == frozenset()


def test_relation_from_identity_operation_is_the_diagonal():
    alg = conflicting_pair().algebra
    table = OpTable("same", 1, alg.n, tuple(range(alg.n)))
    rel = relation_from_operator(alg, table)
    n = rel.space.n_points
    assert rel.tuples == frozenset((i, i) for i in range(n))


def test_relation_properties_for_operator_relations():
    for fixture in (disjoint_pair(), conflicting_pair(), boolean_four()):
        alg, d = domain_algebra(fixture)
        rel = relation_from_operator(alg, d)
        report = check_relation_properties(rel)
        assert report.ok, report.failures
        assert check_union_commutation(rel.space, rel)


def test_full_relation_on_a_doubled_fibre_fails_compatibility():
    space = F_object(conflicting_pair().algebra)  # two points, one fibre
    full = SpaceRelation(
        "full", space, 1, frozenset((x, y) for x in range(2) for y in range(2))
    )
    report = check_relation_properties(full)
    assert not report.compatibility_property


def test_operation_from_relation_requires_the_preconditions():
    space = F_object(conflicting_pair().algebra)
    full = SpaceRelation(
        "full", space, 1, frozenset((x, y) for x in range(2) for y in range(2))
    )
    with pytest.raises(OperatorCheckError):
        operation_from_relation(space, full)


def test_diagonal_relation_induces_the_identity_operation():
    space = F_object(disjoint_pair().algebra)
    diag = SpaceRelation(
        "same", space, 1, frozenset((i, i) for i in range(space.n_points))
    )
    dual, table = operation_from_relation(space, diag)
    assert table.entries == tuple(range(len(dual.sections)))


def test_empty_relation_induces_the_constant_empty_operation():
    space = F_object(disjoint_pair().algebra)
    empty = SpaceRelation("none", space, 1, frozenset())
    dual, table = operation_from_relation(space, empty)
    bot = dual.sections.index(frozenset())
    assert set(table.entries) == {bot}


def test_hat_equality_for_operators():
    for fixture in (disjoint_pair(), conflicting_pair(), boolean_four()):
        alg, d = domain_algebra(fixture)
        assert check_eta_preserves_operator(alg, d)
        assert check_eta_preserves_operator(alg, meet_table(alg))


def test_hat_equality_refuses_non_operators():
    alg = from_concrete(conflicting_pair().concrete, extra_ops=("override",))
    with pytest.raises(OperatorCheckError):
        check_eta_preserves_operator(alg.with_ops(()), alg.op("override"))


def test_tightness_recovery_is_unique_on_two_point_spaces():
    # brute force: the operator relation is the only relation inducing the
    # same operation and passing the tightness check
    alg, d = domain_algebra(disjoint_pair())
    rel = relation_from_operator(alg, d)
    space = rel.space
    points = range(space.n_points)
    matches = []
    from itertools import product

    all_pairs = list(product(points, repeat=2))
    for mask in range(1 << len(all_pairs)):
        tuples = frozenset(p for i, p in enumerate(all_pairs) if mask >> i & 1)
        candidate = SpaceRelation("r", space, 1, tuples)
        report = check_relation_properties(candidate)
        if not (report.compatibility_property and report.spectral and report.tight):
            continue
        _, table = operation_from_relation(space, candidate)
        _, wanted = operation_from_relation(space, rel)
        if table.entries == wanted.entries:
            matches.append(tuples)
    assert matches == [rel.tuples]


# ---------------------------------------------------------------------------
# morphisms against relations

def test_identity_morphism_satisfies_back_and_forth():
    alg, d = domain_algebra(disjoint_pair())
    rel = relation_from_operator(alg, d)
    report = check_morphism_back_forth(identity_morphism(rel.space), rel, rel)
    assert report.ok


def test_counit_satisfies_back_and_forth():
    alg, d = domain_algebra(disjoint_pair())
    rel = relation_from_operator(alg, d)
    space = rel.space
    lam = counit_lambda(space)
    dual, lifted = operation_from_relation(space, rel)
    lifted_rel = relation_from_operator(dual.algebra, lifted)
    report = check_morphism_back_forth(lam, rel, lifted_rel)
    assert report.ok


def test_mismatched_relations_are_rejected():
    alg, d = domain_algebra(disjoint_pair())
    rel = relation_from_operator(alg, d)
    other = relation_from_operator(*domain_algebra(conflicting_pair()))
    with pytest.raises(OperatorCheckError):
        check_morphism_back_forth(identity_morphism(rel.space), rel, other)


# ---------------------------------------------------------------------------
# completion with operators

def test_completion_carries_domain_to_the_cube():
    alg, d = domain_algebra(disjoint_pair())
    equipped, embedding, lifted = complete_with_operators(alg, [d])
    assert equipped.n == 4
    assert equipped.op_names() == ("domain",)
    # the carried operation is the domain operator of the completion: every
    # section maps to the fibre-saturated subidentity with the same base
    (table,) = lifted
    report = classify_operator(equipped.with_ops(()), table)
    assert report.is_compat_preserving_operator
    for a in range(alg.n):
        assert embedding.table[d(a)] == table(embedding.table[a])


def test_completion_with_no_operators_is_plain_completion():
    alg = disjoint_pair().algebra
    equipped, embedding, lifted = complete_with_operators(alg, [])
    assert lifted == ()
    assert equipped.n == 4


def test_complete_algebras_keep_their_operators():
    alg, d = domain_algebra(conflicting_pair())
    equipped, embedding, (table,) = complete_with_operators(alg, [d])
    assert equipped.n == alg.n
    reordered = [table(embedding.table[a]) for a in range(alg.n)]
    assert reordered == [embedding.table[d(a)] for a in range(alg.n)]


def test_completion_rejects_non_operators():
    alg = from_concrete(conflicting_pair().concrete, extra_ops=("override",))
    with pytest.raises(OperatorCheckError):
        complete_with_operators(alg.with_ops(()), [alg.op("override")])


# ---------------------------------------------------------------------------
# the concrete catalogue

POSITIVE = ("compose", "domain", "range", "fixset", "identity", "range_restrict")


def test_catalogue_positives_on_conflicting_pair():
    entries = {
        e.operation: e for e in classify_concrete_ops(conflicting_pair().concrete)
    }
    for name in POSITIVE:
        entry = entries[name]
        assert entry.implemented, entry.note
        assert entry.report.is_compat_preserving_operator, (name, entry.report)


def test_catalogue_negatives():
    entries = {
        e.operation: e for e in classify_concrete_ops(conflicting_pair().concrete)
    }
    override = entries["override"].report
    assert not override.compat_preserving
    antidomain = entries["antidomain"].report
    assert not antidomain.is_compat_preserving_operator
    assert not antidomain.normal  # identity on an empty domain is not bottom
    assert entries["update"].implemented is False


def test_converse_is_an_operator_but_not_compat_preserving():
    carrier = Carrier(2)
    seeds = [
        PartialFunction.from_graph(carrier, [(0, 0)]),
        PartialFunction.from_graph(carrier, [(1, 0)]),
    ]
    witness = closure_generate(carrier, seeds)
    entries = {e.operation: e for e in classify_concrete_ops(witness, ("converse",))}
    report = entries["converse"].report
    assert report.is_operator
    assert not report.compat_preserving
    assert report.witnesses


def test_converse_closure_fails_gracefully_on_non_injective_elements():
    carrier = Carrier(2)
    non_injective = PartialFunction.from_graph(carrier, [(0, 0), (1, 0)])
    base = closure_generate(carrier, [non_injective])
    entries = {e.operation: e for e in classify_concrete_ops(base, ("converse",))}
    entry = entries["converse"]
    assert not entry.implemented
    assert "injective" in entry.note


def test_apply_relation_respects_arity():
    alg, d = domain_algebra(disjoint_pair())
    rel = relation_from_operator(alg, d)
    with pytest.raises(ValueError):
        apply_relation(rel, [])
