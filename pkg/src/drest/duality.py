"""Dual spaces, the two functors, and the compatible completion.

A space is a finite point set with a projection onto a base set and a basis
of opens.  The general topological formulas are implemented literally; for
finite Hausdorff inputs the validator certifies that the topology degenerates
to the discrete one, which is recorded rather than assumed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import filters as flt
from .dra import (
    AlgebraMap,
    FiniteAlgebra,
    HomReport,
    OpTable,
    bottom,
    derived_meet,
    hom_check,
    is_fin_compatibly_complete,
    is_subtraction_algebra,
    join_if_exists,
    leq,
)

SPACE_SIZE_CAP = 16

NOWHERE = -1


class InvalidSpace(ValueError):
    """A structure offered as a space fails the validator."""


class InvalidMorphism(ValueError):
    """A partial point map fails the morphism conditions."""


@dataclass(frozen=True)
class EtaleSpace:
    """Points over base points, with a basis of opens.

    Opens are arbitrary unions of basis sets; the basis must be intersection
    stable (pairwise intersections are again unions of basis sets).
    """

    n_points: int
    n_base: int
    projection: tuple[int, ...]
    basis: tuple[frozenset[int], ...]
    point_labels: Optional[tuple[str, ...]] = None

    def __post_init__(self) -> None:
        if self.n_points > SPACE_SIZE_CAP:
            raise ValueError(f"spaces capped at {SPACE_SIZE_CAP} points")
        if len(self.projection) != self.n_points:
            raise ValueError("projection must cover every point")
        for b in self.projection:
            if not 0 <= b < self.n_base:
                raise ValueError("projection value outside the base")
        for u in self.basis:
            if any(not 0 <= x < self.n_points for x in u):
                raise ValueError("basis set contains a foreign point")

    def label(self, point: int) -> str:
        if self.point_labels is not None:
            return self.point_labels[point]
        return str(point)

    @property
    def all_points(self) -> frozenset[int]:
        return frozenset(range(self.n_points))

    def fiber(self, base_point: int) -> frozenset[int]:
        return frozenset(
            x for x in range(self.n_points) if self.projection[x] == base_point
        )

    def project(self, subset: Iterable[int]) -> frozenset[int]:
        return frozenset(self.projection[x] for x in subset)

    def project_preimage(self, base_subset: Iterable[int]) -> frozenset[int]:
        wanted = set(base_subset)
        return frozenset(
            x for x in range(self.n_points) if self.projection[x] in wanted
        )


def opens(space: EtaleSpace) -> frozenset[frozenset[int]]:
    """All unions of basis sets, including the empty union."""
    result: set[frozenset[int]] = {frozenset()}
    frontier = list(space.basis)
    while frontier:
        u = frontier.pop()
        new = [u | v for v in result if u | v not in result]
        result.add(u)
        frontier.extend(new)
    return frozenset(result)


def base_opens(space: EtaleSpace, x_opens: frozenset[frozenset[int]]) -> frozenset[frozenset[int]]:
    """Quotient topology on the base: open iff the preimage is open."""
    return frozenset(
        frozenset(v)
        for v in _subsets(space.n_base)
        if space.project_preimage(v) in x_opens
    )


def _subsets(n: int):
    for mask in range(1 << n):
        yield frozenset(i for i in range(n) if mask >> i & 1)


def is_compact(space: EtaleSpace, subset: Iterable[int]) -> bool:
    """Every subset of a finite space is compact (pick one cover member per
    point); kept as a named check so the literal definitions read as stated."""
    return all(0 <= x < space.n_points for x in subset)


@dataclass(frozen=True)
class EtaleReport:
    basis_intersection_stable: bool
    surjective: bool
    projection_continuous: bool
    projection_open: bool
    local_homeo: bool
    hausdorff: bool
    zero_dimensional: bool
    locally_compact: bool
    discrete: bool
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def validate_etale(space: EtaleSpace) -> EtaleReport:
    x_opens = opens(space)
    failures: list[str] = []

    stable = all(
        (u & v) in x_opens for u in space.basis for v in space.basis
    )
    if not stable:
        failures.append("basis not intersection-stable")

    surjective = space.project(range(space.n_points)) == frozenset(range(space.n_base))
    if not surjective:
        failures.append("projection not surjective")

    y_opens = base_opens(space, x_opens)
    continuous = all(space.project_preimage(v) in x_opens for v in y_opens)
    if not continuous:  # tautological under the quotient topology, still checked
        failures.append("projection not continuous")

    open_map = all(space.project(u) in y_opens for u in x_opens)
    if not open_map:
        failures.append("projection not an open map")

    def injective_on(u: frozenset[int]) -> bool:
        return len(space.project(u)) == len(u)

    def restriction_is_homeo(u: frozenset[int]) -> bool:
        if not injective_on(u) or space.project(u) not in y_opens:
            return False
        return all(space.project(u & w) in y_opens for w in x_opens)

    local_homeo = all(
        any(x in u and restriction_is_homeo(u) for u in x_opens)
        for x in range(space.n_points)
    )
    if not local_homeo:
        failures.append("projection not a local homeomorphism")

    hausdorff = all(
        any(
            x in u and y in v and not (u & v)
            for u in space.basis
            for v in space.basis
        )
        for x in range(space.n_points)
        for y in range(space.n_points)
        if x != y
    )
    if not hausdorff:
        failures.append("points not separated by disjoint opens")

    clopens = {u for u in x_opens if space.all_points - u in x_opens}
    zero_dimensional = all(
        any(x in k and k <= o for k in clopens)
        for o in x_opens
        for x in o
    )
    if not zero_dimensional:
        failures.append("no clopen neighbourhood basis")

    # compact neighbourhood basis; finite sets are compact, so the open set
    # itself is always a valid witness
    locally_compact = all(
        any(
            is_compact(space, k) and x in _interior(k, x_opens) and k <= o
            for k in (o,)
        )
        for o in x_opens
        for x in o
    )
    if not locally_compact:
        failures.append("no compact neighbourhood basis")

    discrete = all(frozenset({x}) in x_opens for x in range(space.n_points))

    return EtaleReport(
        basis_intersection_stable=stable,
        surjective=surjective,
        projection_continuous=continuous,
        projection_open=open_map,
        local_homeo=local_homeo,
        hausdorff=hausdorff,
        zero_dimensional=zero_dimensional,
        locally_compact=locally_compact,
        discrete=discrete,
        failures=tuple(failures),
    )


def _interior(subset: frozenset[int], x_opens: frozenset[frozenset[int]]) -> frozenset[int]:
    inner: frozenset[int] = frozenset()
    for u in x_opens:
        if u <= subset:
            inner |= u
    return inner


def compact_sets_are_basis_unions(space: EtaleSpace) -> bool:
    """Finite spaces make every subset compact, so the compactness
    characterisation says every subset must be a union of basis sets."""
    x_opens = opens(space)
    return all(s in x_opens for s in _subsets(space.n_points))


# ---------------------------------------------------------------------------
# morphisms of spaces

@dataclass(frozen=True)
class SpaceMorphism:
    """A partial point map validated eagerly by :func:`space_morphism`."""

    source: EtaleSpace
    target: EtaleSpace
    mapping: tuple[int, ...]  # NOWHERE marks "undefined"

    def __call__(self, x: int) -> Optional[int]:
        v = self.mapping[x]
        return None if v == NOWHERE else v

    @property
    def defined_on(self) -> frozenset[int]:
        return frozenset(x for x, v in enumerate(self.mapping) if v != NOWHERE)

    def preimage(self, subset: Iterable[int]) -> frozenset[int]:
        wanted = set(subset)
        return frozenset(
            x for x, v in enumerate(self.mapping) if v != NOWHERE and v in wanted
        )

    def is_identity(self) -> bool:
        return self.source == self.target and self.mapping == tuple(
            range(self.source.n_points)
        )


@dataclass(frozen=True)
class MorphismReport:
    continuous: bool
    proper: bool
    preserves_equivalence: bool
    fibrewise_injective: bool
    fibrewise_surjective: bool
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def validate_morphism(m: SpaceMorphism) -> MorphismReport:
    src, tgt = m.source, m.target
    failures: list[str] = []

    src_opens = opens(src)
    continuous = all(m.preimage(v) in src_opens for v in opens(tgt))
    if not continuous:
        failures.append("not continuous")

    # properness quantifies over compact target subsets; finitely many points
    # make every subset (and every preimage) compact
    proper = all(
        is_compact(src, m.preimage(v))
        for v in _subsets(tgt.n_points)
        if is_compact(tgt, v)
    )
    if not proper:
        failures.append("not proper")

    dom = m.defined_on
    q1 = all(
        tgt.projection[m.mapping[x]] == tgt.projection[m.mapping[y]]
        for x in dom
        for y in dom
        if src.projection[x] == src.projection[y]
    )
    if not q1:
        failures.append("does not preserve equivalence")

    induced = {
        (src.projection[x], tgt.projection[m.mapping[x]]) for x in dom
    }
    q2 = True
    q3 = True
    for x0, y0 in induced:
        restricted = [
            x
            for x in src.fiber(x0) & dom
            if tgt.projection[m.mapping[x]] == y0
        ]
        images = [m.mapping[x] for x in restricted]
        if len(set(images)) != len(images):
            q2 = False
        if set(images) != set(tgt.fiber(y0)):
            q3 = False
    if not q2:
        failures.append("not fibrewise injective")
    if not q3:
        failures.append("not fibrewise surjective")

    return MorphismReport(
        continuous=continuous,
        proper=proper,
        preserves_equivalence=q1,
        fibrewise_injective=q2,
        fibrewise_surjective=q3,
        failures=tuple(failures),
    )


def space_morphism(
    source: EtaleSpace, target: EtaleSpace, mapping: Sequence[int]
) -> SpaceMorphism:
    m = SpaceMorphism(source, target, tuple(mapping))
    report = validate_morphism(m)
    if not report.ok:
        raise InvalidMorphism("; ".join(report.failures))
    return m


def compose_morphisms(outer: SpaceMorphism, inner: SpaceMorphism) -> SpaceMorphism:
    """outer after inner, defined where the chain is."""
    if inner.target != outer.source:
        raise ValueError("morphisms do not compose")
    mapping = tuple(
        outer.mapping[v] if v != NOWHERE else NOWHERE for v in inner.mapping
    )
    return space_morphism(inner.source, outer.target, mapping)


def identity_morphism(space: EtaleSpace) -> SpaceMorphism:
    return space_morphism(space, space, tuple(range(space.n_points)))


def is_space_isomorphism(m: SpaceMorphism) -> bool:
    """Total homeomorphism whose point map preserves and reflects fibres."""
    src, tgt = m.source, m.target
    if m.defined_on != src.all_points:
        return False
    if len(set(m.mapping)) != src.n_points or tgt.n_points != src.n_points:
        return False
    src_opens, tgt_opens = opens(src), opens(tgt)
    if any(m.preimage(v) not in src_opens for v in tgt_opens):
        return False
    if any(frozenset(m.mapping[x] for x in u) not in tgt_opens for u in src_opens):
        return False
    return all(
        (src.projection[x] == src.projection[y])
        == (tgt.projection[m.mapping[x]] == tgt.projection[m.mapping[y]])
        for x in range(src.n_points)
        for y in range(src.n_points)
    )


# ---------------------------------------------------------------------------
# the two functors

def F_object(algebra: FiniteAlgebra) -> EtaleSpace:
    """Space of maximal filters over their shared-domain classes, with the
    element supports as basis."""
    space, _ = _dual_space(algebra)
    return space


def _dual_space(algebra: FiniteAlgebra) -> tuple[EtaleSpace, flt.MaxFilterSpace]:
    mfs = flt.maximal_filters(algebra)
    n_points = len(mfs.points)
    projection = tuple(mfs.class_of(i) for i in range(n_points))
    hats = sorted(
        {flt.hat(mfs, a) for a in range(algebra.n)},
        key=lambda s: sorted(s),
    )
    labels = tuple(
        "{" + ",".join(algebra.elements[a] for a in sorted(mu)) + "}"
        for mu in mfs.points
    )
    space = EtaleSpace(
        n_points=n_points,
        n_base=len(mfs.classes),
        projection=projection,
        basis=tuple(hats),
        point_labels=labels,
    )
    report = validate_etale(space)
    if not report.ok:
        raise AssertionError(
            f"internal error: dual space invalid ({'; '.join(report.failures)})"
        )
    return space, mfs


def section_name(u: frozenset[int]) -> str:
    return "{" + ",".join(str(x) for x in sorted(u)) + "}"


@dataclass(frozen=True)
class DualAlgebra:
    """Compact open injective-projection subsets of a space, as an algebra."""

    space: EtaleSpace
    sections: tuple[frozenset[int], ...]
    algebra: FiniteAlgebra

    def section_index(self, u: frozenset[int]) -> int:
        return self.sections.index(u)


def G_object(space: EtaleSpace) -> DualAlgebra:
    report = validate_etale(space)
    if not report.ok:
        raise InvalidSpace("; ".join(report.failures))
    x_opens = opens(space)
    sections = sorted(
        (
            u
            for u in x_opens
            if is_compact(space, u) and len(space.project(u)) == len(u)
        ),
        key=lambda s: (len(s), sorted(s)),
    )
    index = {u: i for i, u in enumerate(sections)}
    n = len(sections)

    def minus(i: int, j: int) -> int:
        result = sections[i] - sections[j]
        if result not in index:
            raise AssertionError("internal error: sections not closed under difference")
        return index[result]

    def rest(i: int, j: int) -> int:
        result = space.project_preimage(space.project(sections[i])) & sections[j]
        if result not in index:
            raise AssertionError("internal error: sections not closed under restriction")
        return index[result]

    names = tuple(section_name(u) for u in sections)
    algebra = FiniteAlgebra(
        elements=names,
        minus=OpTable("minus", 2, n, tuple(minus(i, j) for i in range(n) for j in range(n))),
        rest=OpTable("rest", 2, n, tuple(rest(i, j) for i in range(n) for j in range(n))),
    )
    return DualAlgebra(space, tuple(sections), algebra)


def unit_eta(algebra: FiniteAlgebra) -> AlgebraMap:
    """Send each element to its support among the maximal filters."""
    space, mfs = _dual_space(algebra)
    dual = G_object(space)
    table = tuple(
        dual.section_index(flt.hat(mfs, a)) for a in range(algebra.n)
    )
    mapping = AlgebraMap(algebra, dual.algebra, table)
    report = hom_check(mapping)
    if not report.is_embedding:
        raise AssertionError("internal error: representation map not an embedding")
    return mapping


def counit_lambda(space: EtaleSpace) -> SpaceMorphism:
    """Send each point to the filter of sections containing it, where that
    collection is nonempty."""
    dual = G_object(space)
    target, target_mfs = _dual_space(dual.algebra)
    mapping = []
    for x in range(space.n_points):
        containing = frozenset(
            i for i, u in enumerate(dual.sections) if x in u
        )
        if not containing:
            mapping.append(NOWHERE)
            continue
        if containing not in target_mfs.points:
            raise AssertionError("internal error: point filter not maximal")
        mapping.append(target_mfs.point_index(containing))
    return space_morphism(space, target, mapping)


def F_morphism(h: AlgebraMap) -> SpaceMorphism:
    """Dualise an algebra map to a partial map of spaces, by preimage of
    filters; defined on the filters meeting the image."""
    src_space, src_mfs = _dual_space(h.target)  # points of the target algebra
    tgt_space, tgt_mfs = _dual_space(h.source)
    mapping = []
    for xi in src_mfs.points:
        pullback = frozenset(a for a in range(h.source.n) if h.table[a] in xi)
        if not pullback:
            mapping.append(NOWHERE)
            continue
        if pullback not in tgt_mfs.points:
            raise AssertionError("internal error: filter preimage not maximal")
        mapping.append(tgt_mfs.point_index(pullback))
    morphism = space_morphism(src_space, tgt_space, mapping)
    for a in range(h.source.n):
        if morphism.preimage(flt.hat(tgt_mfs, a)) != flt.hat(src_mfs, h.table[a]):
            raise AssertionError("internal error: dual map misses the support identity")
    return morphism


def G_morphism(m: SpaceMorphism) -> AlgebraMap:
    """Dualise a space morphism to an algebra map, by preimage of sections."""
    src_dual = G_object(m.source)
    tgt_dual = G_object(m.target)
    table = tuple(
        src_dual.section_index(m.preimage(u)) for u in tgt_dual.sections
    )
    mapping = AlgebraMap(tgt_dual.algebra, src_dual.algebra, table)
    if not hom_check(mapping).is_hom:
        raise AssertionError("internal error: dualised morphism not a homomorphism")
    return mapping


# ---------------------------------------------------------------------------
# adjunction checks

@dataclass(frozen=True)
class TriangleReport:
    space_side: bool
    algebra_side: bool

    @property
    def ok(self) -> bool:
        return self.space_side and self.algebra_side


def check_triangle_identities(obj) -> TriangleReport:
    """Both composite identities, anchored at the given algebra or space."""
    if isinstance(obj, FiniteAlgebra):
        algebra, space = obj, F_object(obj)
    elif isinstance(obj, EtaleSpace):
        algebra, space = G_object(obj).algebra, obj
        space_of_algebra = F_object(algebra)
        # anchor the space-side identity at the given space's dual algebra
        left = compose_morphisms(F_morphism(unit_eta(algebra)), counit_lambda(space_of_algebra))
        right = G_morphism(counit_lambda(space)).compose(unit_eta(G_object(space).algebra))
        return TriangleReport(left.is_identity(), right.is_identity())
    else:
        raise TypeError("expected an algebra or a space")

    left = compose_morphisms(F_morphism(unit_eta(algebra)), counit_lambda(space))
    right = G_morphism(counit_lambda(space)).compose(unit_eta(G_object(space).algebra))
    return TriangleReport(left.is_identity(), right.is_identity())


def eta_naturality_square(h: AlgebraMap) -> bool:
    gfh = G_morphism(F_morphism(h))
    lhs = gfh.compose(unit_eta(h.source))
    rhs = unit_eta(h.target).compose(h)
    return lhs.table == rhs.table


def lambda_naturality_square(m: SpaceMorphism) -> bool:
    fgm = F_morphism(G_morphism(m))
    lhs = compose_morphisms(fgm, counit_lambda(m.source))
    rhs = compose_morphisms(counit_lambda(m.target), m)
    return lhs.mapping == rhs.mapping


# ---------------------------------------------------------------------------
# completion

@dataclass(frozen=True)
class CompletionReport:
    embedding: bool
    target_complete: bool
    image_dense: bool

    @property
    def ok(self) -> bool:
        return self.embedding and self.target_complete and self.image_dense


def completion_report(m: AlgebraMap) -> CompletionReport:
    embedding = hom_check(m).is_embedding
    complete_target = is_fin_compatibly_complete(m.target)
    dense = all(
        join_if_exists(
            m.target,
            [m.table[a] for a in range(m.source.n) if leq(m.target, m.table[a], c)],
        )
        == c
        for c in range(m.target.n)
    )
    return CompletionReport(embedding, complete_target, dense)


def complete(algebra: FiniteAlgebra) -> tuple[FiniteAlgebra, AlgebraMap]:
    """The closure of the algebra under finite compatible joins, with its
    canonical embedding."""
    iota = unit_eta(algebra)
    report = completion_report(iota)
    if not report.ok:
        raise AssertionError("internal error: canonical embedding is not a completion")
    return iota.target, iota


def unique_completion_iso(iota: AlgebraMap, iota2: AlgebraMap) -> AlgebraMap:
    """The unique isomorphism between two completions commuting with the
    embeddings."""
    if iota.source != iota2.source:
        raise ValueError("completions must share a source")
    for m in (iota, iota2):
        if not completion_report(m).ok:
            raise ValueError("input is not a completion")
    c1, c2 = iota.target, iota2.target
    table = []
    for c in range(c1.n):
        below = [a for a in range(iota.source.n) if leq(c1, iota.table[a], c)]
        image = join_if_exists(c2, [iota2.table[a] for a in below])
        if image is None:
            raise AssertionError("internal error: transported join missing")
        table.append(image)
    theta = AlgebraMap(c1, c2, tuple(table))
    if not hom_check(theta).is_embedding or len(set(theta.table)) != c2.n:
        raise AssertionError("internal error: transport is not an isomorphism")
    if tuple(theta.table[iota.table[a]] for a in range(iota.source.n)) != iota2.table:
        raise AssertionError("internal error: transport does not commute")
    return theta


@dataclass(frozen=True)
class CharacterizationEntry:
    extension: str
    smallest_applicable: bool
    smallest_factors: bool
    largest_applicable: bool
    largest_factors: bool


def _factoring_embedding(
    via: AlgebraMap, into: AlgebraMap
) -> Optional[AlgebraMap]:
    """Embedding t: via.target -> into.target with t o via = into, built by
    transporting joins of the common image; None when it does not exist."""
    src = via.source
    table = []
    for c in range(via.target.n):
        below = [a for a in range(src.n) if leq(via.target, via.table[a], c)]
        if join_if_exists(via.target, [via.table[a] for a in below]) != c:
            return None  # c not a join from the image; cannot transport
        image = join_if_exists(into.target, [into.table[a] for a in below])
        if image is None:
            return None
        table.append(image)
    candidate = AlgebraMap(via.target, into.target, tuple(table))
    if not hom_check(candidate).is_embedding:
        return None
    if tuple(candidate.table[via.table[a]] for a in range(src.n)) != into.table:
        return None
    return candidate


def completion_characterizations(
    iota: AlgebraMap, extensions: Sequence[tuple[str, AlgebraMap]]
) -> tuple[CharacterizationEntry, ...]:
    """Probe the smallest-complete-extension and largest-dense-extension
    characterisations against a family of test embeddings."""
    if not hom_check(iota).is_embedding:
        raise ValueError("base map must be an embedding")
    entries = []
    for name, kappa in extensions:
        if kappa.source != iota.source:
            raise ValueError("extension must share the source")
        if not hom_check(kappa).is_embedding:
            raise ValueError(f"extension {name} is not an embedding")
        k_report = completion_report(kappa)
        smallest_applicable = k_report.target_complete
        largest_applicable = k_report.image_dense
        smallest = (
            _factoring_embedding(iota, kappa) is not None
            if smallest_applicable
            else False
        )
        largest = (
            _factoring_embedding(kappa, iota) is not None
            if largest_applicable
            else False
        )
        entries.append(
            CharacterizationEntry(
                extension=name,
                smallest_applicable=smallest_applicable,
                smallest_factors=smallest,
                largest_applicable=largest_applicable,
                largest_factors=largest,
            )
        )
    return tuple(entries)


# ---------------------------------------------------------------------------
# the subtraction-algebra specialisation

@dataclass(frozen=True)
class StoneReport:
    applicable: bool
    equiv_is_equality: Optional[bool] = None
    dual_is_subtraction: Optional[bool] = None
    completion_gba_laws: Optional[bool] = None

    @property
    def ok(self) -> bool:
        return self.applicable and all(
            v is not False
            for v in (
                self.equiv_is_equality,
                self.dual_is_subtraction,
                self.completion_gba_laws,
            )
        )


def stone_restriction_checks(obj) -> StoneReport:
    """Degenerate-case checks: trivial point grouping, intersection-like
    restriction on identity-projection spaces, and the two relative-complement
    lattice laws in the completion."""
    if isinstance(obj, FiniteAlgebra):
        if not is_subtraction_algebra(obj):
            return StoneReport(applicable=False)
        mfs = flt.maximal_filters(obj)
        equiv_trivial = all(len(cls) == 1 for cls in mfs.classes)
        completed, _ = complete(obj)
        laws = True
        for a in range(completed.n):
            for b in range(completed.n):
                rel = completed.m(b, a)
                if derived_meet(completed, a, rel) != bottom(completed):
                    laws = False
                if join_if_exists(completed, (a, rel)) != join_if_exists(
                    completed, (a, b)
                ):
                    laws = False
        return StoneReport(
            applicable=True,
            equiv_is_equality=equiv_trivial,
            completion_gba_laws=laws,
        )
    if isinstance(obj, EtaleSpace):
        identity_projection = obj.n_points == obj.n_base and obj.projection == tuple(
            range(obj.n_points)
        )
        if not identity_projection:
            return StoneReport(applicable=False)
        dual = G_object(obj)
        return StoneReport(
            applicable=True,
            dual_is_subtraction=is_subtraction_algebra(dual.algebra),
        )
    raise TypeError("expected an algebra or a space")
