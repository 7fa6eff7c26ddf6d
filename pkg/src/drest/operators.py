"""Compatibility-preserving operators and their dual point relations.

An operator here is a total operation table on a finite algebra.  The three
defining properties (compatibility preservation, normality, additivity) are
decided by exhaustive scans; relations on dual spaces are classified the same
way and translated back and forth against operation tables.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional, Sequence

from . import filters as flt
from .dra import (
    AlgebraMap,
    FiniteAlgebra,
    OpTable,
    bottom,
    compatible,
    derived_meet,
    from_concrete,
    hom_check,
    join_if_exists,
)
from .duality import (
    DualAlgebra,
    EtaleSpace,
    G_object,
    SpaceMorphism,
    _dual_space,
    complete,
    opens,
    unit_eta,
)
from .pfun import ConcretePFAlgebra, closure_generate

OPERATOR_ARITY_CAP = 3
OPERATOR_ALGEBRA_CAP = 10


class OperatorCheckError(ValueError):
    """An operator or relation check was asked outside its preconditions."""


def _check_caps(algebra: FiniteAlgebra, table: OpTable) -> None:
    if table.arity > OPERATOR_ARITY_CAP:
        raise OperatorCheckError(f"operator arity capped at {OPERATOR_ARITY_CAP}")
    if algebra.n > OPERATOR_ALGEBRA_CAP:
        raise OperatorCheckError(
            f"operator checks capped at {OPERATOR_ALGEBRA_CAP} elements"
        )
    if table.size != algebra.n:
        raise OperatorCheckError("operation table sized for a different algebra")


def check_compat_preserving(
    algebra: FiniteAlgebra, table: OpTable
) -> tuple[bool, Optional[tuple[tuple[int, ...], tuple[int, ...]]]]:
    """Coordinatewise compatible inputs must give compatible outputs.

    Returns the verdict and a witness pair of argument tuples on failure.
    """
    _check_caps(algebra, table)
    n = algebra.n
    for xs in product(range(n), repeat=table.arity):
        for ys in product(range(n), repeat=table.arity):
            if all(compatible(algebra, x, y) for x, y in zip(xs, ys)):
                if not compatible(algebra, table(*xs), table(*ys)):
                    return False, (xs, ys)
    return True, None


def check_normal(
    algebra: FiniteAlgebra, table: OpTable
) -> tuple[bool, Optional[tuple[int, ...]]]:
    """A bottom in any coordinate must give bottom."""
    _check_caps(algebra, table)
    bot = bottom(algebra)
    n = algebra.n
    for i in range(table.arity):
        for rest in product(range(n), repeat=table.arity - 1):
            args = rest[:i] + (bot,) + rest[i:]
            if table(*args) != bot:
                return False, args
    return True, None


def check_additive(
    algebra: FiniteAlgebra, table: OpTable
) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Existing binary joins in any coordinate must be carried to joins.

    Pairs without a join are skipped; the premise only speaks of joins that
    exist.
    """
    _check_caps(algebra, table)
    n = algebra.n
    for i in range(table.arity):
        for rest in product(range(n), repeat=table.arity - 1):
            for x in range(n):
                for y in range(x, n):
                    j = join_if_exists(algebra, (x, y))
                    if j is None:
                        continue
                    out_j = table(*rest[:i], j, *rest[i:])
                    out_xy = join_if_exists(
                        algebra,
                        (table(*rest[:i], x, *rest[i:]), table(*rest[:i], y, *rest[i:])),
                    )
                    if out_xy != out_j:
                        return False, rest[:i] + (x, y) + rest[i:]
    return True, None


@dataclass(frozen=True)
class OperatorReport:
    name: str
    arity: int
    compat_preserving: bool
    normal: bool
    additive: bool
    witnesses: tuple[str, ...]

    @property
    def is_operator(self) -> bool:
        # "operator" in the Jonsson-Tarski sense: normal and additive
        return self.normal and self.additive

    @property
    def is_compat_preserving_operator(self) -> bool:
        return self.is_operator and self.compat_preserving


def classify_operator(algebra: FiniteAlgebra, table: OpTable) -> OperatorReport:
    witnesses: list[str] = []

    def render(args: Iterable[int]) -> str:
        return "(" + ", ".join(algebra.elements[a] for a in args) + ")"

    compat, w = check_compat_preserving(algebra, table)
    if not compat:
        witnesses.append(f"compatibility lost at {render(w[0])} vs {render(w[1])}")
    normal, w = check_normal(algebra, table)
    if not normal:
        witnesses.append(f"not normal at {render(w)}")
    additive, w = check_additive(algebra, table)
    if not additive:
        witnesses.append(f"not additive at {render(w)}")
    return OperatorReport(
        name=table.name,
        arity=table.arity,
        compat_preserving=compat,
        normal=normal,
        additive=additive,
        witnesses=tuple(witnesses),
    )


# ---------------------------------------------------------------------------
# relations on spaces

@dataclass(frozen=True)
class SpaceRelation:
    """A set of (arity + 1)-tuples of points; the last coordinate is the
    output position."""

    name: str
    space: EtaleSpace
    arity: int
    tuples: frozenset[tuple[int, ...]]

    def __post_init__(self) -> None:
        for t in self.tuples:
            if len(t) != self.arity + 1:
                raise ValueError(f"relation {self.name}: tuple of wrong length")
            if any(not 0 <= x < self.space.n_points for x in t):
                raise ValueError(f"relation {self.name}: foreign point")


def apply_relation(
    rel: SpaceRelation, subsets: Sequence[frozenset[int]]
) -> frozenset[int]:
    """Outputs reachable from inputs drawn one per subset."""
    if len(subsets) != rel.arity:
        raise ValueError("argument count does not match the relation arity")
    return frozenset(
        t[-1]
        for t in rel.tuples
        if all(t[i] in subsets[i] for i in range(rel.arity))
    )


def relation_from_operator(
    algebra: FiniteAlgebra, table: OpTable
) -> SpaceRelation:
    """The point relation on the maximal-filter space: inputs drawn from the
    first filters must always land the operation in the last."""
    _check_caps(algebra, table)
    space, mfs = _dual_space(algebra)
    k = table.arity
    tuples = set()
    for mus in product(range(len(mfs.points)), repeat=k):
        images = {
            table(*args)
            for args in product(*(sorted(mfs.points[m]) for m in mus))
        }
        for nu in range(len(mfs.points)):
            if images <= mfs.points[nu]:
                tuples.add(mus + (nu,))
    return SpaceRelation(table.name, space, k, frozenset(tuples))


@dataclass(frozen=True)
class RelationReport:
    compatibility_property: bool
    continuous: bool
    spectral: bool
    tight: bool
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def check_relation_properties(rel: SpaceRelation) -> RelationReport:
    space = rel.space
    x_opens = opens(space)
    failures: list[str] = []

    def point_compat(x: int, y: int) -> bool:
        return x == y or space.projection[x] != space.projection[y]

    compat = True
    for s in rel.tuples:
        for t in rel.tuples:
            if all(point_compat(s[i], t[i]) for i in range(rel.arity)):
                if not point_compat(s[-1], t[-1]):
                    compat = False
    if not compat:
        failures.append("compatibility property fails")

    # applying the relation commutes with unions in each argument, so the
    # open-tuple quantifiers are decided by basis tuples
    basis_images_open = all(
        apply_relation(rel, us) in x_opens
        for us in product(space.basis, repeat=rel.arity)
    )
    continuous = basis_images_open
    if not continuous:
        failures.append("continuity fails")
    # finitely many points make every open compact, so the compact-open case
    # asks for nothing further
    spectral = basis_images_open
    if not spectral:
        failures.append("spectrality fails")

    # the relation application is monotone in each argument, so the
    # quantifier over compact open neighbourhoods is decided by minimal ones
    minimal_open = []
    for x in range(space.n_points):
        around = [u for u in x_opens if x in u]
        minimal_open.append(
            frozenset.intersection(*around) if around else frozenset()
        )
    tight = all(
        xs in rel.tuples
        for xs in product(range(space.n_points), repeat=rel.arity + 1)
        if xs[-1] in apply_relation(rel, [minimal_open[x] for x in xs[:-1]])
    )
    if not tight:
        failures.append("tightness fails")

    return RelationReport(compat, continuous, spectral, tight, tuple(failures))


def operation_from_relation(
    space: EtaleSpace, rel: SpaceRelation
) -> tuple[DualAlgebra, OpTable]:
    """The induced operation on the sections of the space.

    Requires a spectral relation with the compatibility property; those two
    properties are exactly what makes every output set a section again.
    """
    if rel.space != space:
        raise OperatorCheckError("relation lives on a different space")
    report = check_relation_properties(rel)
    missing = [
        name
        for name, holds in (
            ("compatibility property", report.compatibility_property),
            ("spectrality", report.spectral),
        )
        if not holds
    ]
    if missing:
        raise OperatorCheckError(
            "relation does not induce an operation: fails " + ", ".join(missing)
        )
    dual = G_object(space)
    n = len(dual.sections)
    entries = []
    for args in product(range(n), repeat=rel.arity):
        out = apply_relation(rel, [dual.sections[i] for i in args])
        entries.append(dual.section_index(out))
    return dual, OpTable(rel.name, rel.arity, n, tuple(entries))


def check_union_commutation(space: EtaleSpace, rel: SpaceRelation) -> bool:
    """Applying the relation distributes over unions of sections in each
    argument."""
    dual = G_object(space)
    sections = dual.sections
    for args in product(range(len(sections)), repeat=rel.arity):
        for i in range(rel.arity):
            for extra in range(len(sections)):
                merged = list(sections[s] for s in args)
                merged[i] = merged[i] | sections[extra]
                swapped = list(sections[s] for s in args)
                swapped[i] = sections[extra]
                union = apply_relation(rel, merged)
                parts = apply_relation(rel, [sections[s] for s in args]) | apply_relation(rel, swapped)
                if union != parts:
                    return False
    return True


def check_eta_preserves_operator(
    algebra: FiniteAlgebra, table: OpTable
) -> bool:
    """The support of an output equals the relation applied to the supports
    of the inputs, for every argument tuple."""
    report = classify_operator(algebra, table)
    if not report.is_compat_preserving_operator:
        raise OperatorCheckError(
            f"{table.name} is not a compatibility-preserving operator: "
            + "; ".join(report.witnesses)
        )
    _, mfs = _dual_space(algebra)
    rel = relation_from_operator(algebra, table)
    for args in product(range(algebra.n), repeat=table.arity):
        lhs = flt.hat(mfs, table(*args))
        rhs = apply_relation(rel, [flt.hat(mfs, a) for a in args])
        if lhs != rhs:
            return False
    return True


@dataclass(frozen=True)
class BackForthReport:
    reverse_forth: bool
    back: bool

    @property
    def ok(self) -> bool:
        return self.reverse_forth and self.back


def check_morphism_back_forth(
    morphism: SpaceMorphism, rel_src: SpaceRelation, rel_tgt: SpaceRelation
) -> BackForthReport:
    if rel_src.space != morphism.source or rel_tgt.space != morphism.target:
        raise OperatorCheckError("relations do not live on the morphism's spaces")
    if rel_src.arity != rel_tgt.arity:
        raise OperatorCheckError("relations have different arities")
    phi = morphism.mapping
    dom = morphism.defined_on
    k = rel_src.arity

    reverse_forth = True
    for t in rel_src.tuples:
        if all(x in dom for x in t[:k]):
            if t[-1] not in dom or tuple(phi[x] for x in t) not in rel_tgt.tuples:
                reverse_forth = False

    back = True
    for x_last in dom:
        for s in rel_tgt.tuples:
            if s[-1] != phi[x_last]:
                continue
            hit = any(
                all(x in dom and phi[x] == s[i] for i, x in enumerate(xs))
                and xs + (x_last,) in rel_src.tuples
                for xs in product(range(morphism.source.n_points), repeat=k)
            )
            if not hit:
                back = False
    return BackForthReport(reverse_forth, back)


# ---------------------------------------------------------------------------
# completion carrying operators along

def complete_with_operators(
    algebra: FiniteAlgebra, tables: Sequence[OpTable]
) -> tuple[FiniteAlgebra, AlgebraMap, tuple[OpTable, ...]]:
    """The finite compatible completion, with each operator carried across
    via its point relation.

    The embedding preserves every operator, and each carried operator passes
    the three operator checks on the completion.
    """
    for table in tables:
        report = classify_operator(algebra, table)
        if not report.is_compat_preserving_operator:
            raise OperatorCheckError(
                f"{table.name} is not a compatibility-preserving operator: "
                + "; ".join(report.witnesses)
            )

    completed, iota = complete(algebra)
    lifted: list[OpTable] = []
    for table in tables:
        rel = relation_from_operator(algebra, table)
        dual, lifted_table = operation_from_relation(rel.space, rel)
        if dual.algebra.elements != completed.elements:
            raise AssertionError("internal error: completion built twice differently")
        lifted.append(lifted_table)
        for args in product(range(algebra.n), repeat=table.arity):
            if iota.table[table(*args)] != lifted_table(*(iota.table[a] for a in args)):
                raise AssertionError(
                    f"internal error: embedding does not carry {table.name}"
                )
        check = classify_operator(completed, lifted_table)
        if not check.is_compat_preserving_operator:
            raise AssertionError(
                f"internal error: carried {table.name} fails the operator checks"
            )
    equipped = completed.with_ops(lifted)
    embedding = AlgebraMap(
        algebra.with_ops(tables), equipped, iota.table
    )
    if not hom_check(embedding).is_embedding:
        raise AssertionError("internal error: equipped embedding not an embedding")
    return equipped, embedding, tuple(lifted)


# ---------------------------------------------------------------------------
# the concrete-operation catalogue

NOT_IMPLEMENTED = ("update",)  # no formula fixed here; listed, never classified

CATALOGUE = (
    "compose",
    "domain",
    "range",
    "fixset",
    "identity",
    "range_restrict",
    "antidomain",
    "override",
    "converse",
    "update",
)


@dataclass(frozen=True)
class CatalogueEntry:
    operation: str
    implemented: bool
    closed_size: Optional[int] = None
    report: Optional[OperatorReport] = None
    note: str = ""


def classify_concrete_ops(
    algebra: ConcretePFAlgebra,
    operations: Sequence[str] = CATALOGUE,
) -> tuple[CatalogueEntry, ...]:
    """Classify the named concrete operations on (an extension of) the given
    algebra.

    The algebra is first closed under difference, restriction, and the tested
    operation; operations whose closure leaves partial functions (converse on
    a non-injective element) or exceeds the size cap are reported unclassified.
    """
    entries: list[CatalogueEntry] = []
    for name in operations:
        if name in NOT_IMPLEMENTED:
            entries.append(
                CatalogueEntry(name, False, note="no definition adopted")
            )
            continue
        try:
            closed = closure_generate(
                algebra.carrier,
                algebra.elements,
                ops=("difference", "restrict", name),
            )
        except ValueError as exc:
            entries.append(CatalogueEntry(name, False, note=str(exc)))
            continue
        if len(closed.elements) > OPERATOR_ALGEBRA_CAP:
            entries.append(
                CatalogueEntry(
                    name,
                    False,
                    closed_size=len(closed.elements),
                    note="closure exceeds the operator check cap",
                )
            )
            continue
        abstract = from_concrete(closed, extra_ops=(name,))
        report = classify_operator(abstract, abstract.op(name))
        entries.append(
            CatalogueEntry(name, True, len(closed.elements), report)
        )
    return tuple(entries)
