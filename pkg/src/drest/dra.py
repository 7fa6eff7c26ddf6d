"""Abstract finite algebras of difference and restriction, given by tables.

An algebra is a list of element names plus total operation tables.  The
validator checks the five defining equations; everything else (order,
compatibility, joins, homomorphisms, isomorphism search) is derived from the
two tables.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Optional, Sequence

import numpy as np

from .pfun import RAW_OPS, ConcretePFAlgebra, PartialFunction

ISO_SEARCH_CAP = 12


@dataclass(frozen=True)
class OpTable:
    """A total n-ary operation on element indices, stored row-major."""

    name: str
    arity: int
    size: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.size**self.arity:
            raise ValueError(f"table {self.name}: wrong number of entries")
        for e in self.entries:
            if not 0 <= e < self.size:
                raise ValueError(f"table {self.name}: entry {e} out of range")

    def __call__(self, *args: int) -> int:
        if len(args) != self.arity:
            raise ValueError(f"table {self.name} expects {self.arity} arguments")
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return self.entries[idx]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.entries, dtype=np.int64).reshape((self.size,) * self.arity)


@dataclass(frozen=True)
class FiniteAlgebra:
    elements: tuple[str, ...]
    minus: OpTable
    rest: OpTable
    extra_ops: tuple[OpTable, ...] = ()

    def __post_init__(self) -> None:
        n = len(self.elements)
        if len(set(self.elements)) != n:
            raise ValueError("element names must be distinct")
        for table in (self.minus, self.rest, *self.extra_ops):
            if table.size != n:
                raise ValueError(f"table {table.name} sized for a different algebra")
        if self.minus.arity != 2 or self.rest.arity != 2:
            raise ValueError("difference and restriction must be binary")

    @property
    def n(self) -> int:
        return len(self.elements)

    def m(self, x: int, y: int) -> int:
        return self.minus.entries[x * self.n + y]

    def r(self, x: int, y: int) -> int:
        return self.rest.entries[x * self.n + y]

    def op(self, name: str) -> OpTable:
        for table in self.extra_ops:
            if table.name == name:
                return table
        raise KeyError(f"no operation named {name!r}")

    def op_names(self) -> tuple[str, ...]:
        return tuple(t.name for t in self.extra_ops)

    def index(self, name: str) -> int:
        return self.elements.index(name)

    def with_ops(self, ops: Iterable[OpTable]) -> "FiniteAlgebra":
        return FiniteAlgebra(self.elements, self.minus, self.rest, tuple(ops))


def binary_table(name: str, n: int, fn) -> OpTable:
    return OpTable(name, 2, n, tuple(fn(x, y) for x in range(n) for y in range(n)))


def from_concrete(
    algebra: ConcretePFAlgebra, extra_ops: Iterable[str] = ()
) -> FiniteAlgebra:
    """Extract operation tables from a concrete partial-function algebra.

    The algebra must be closed under every requested operation; "identity"
    requires the identity function to be a member.
    """
    elems = algebra.elements
    n = len(elems)
    index = {f.values: i for i, f in enumerate(elems)}
    names = tuple(f.render() for f in elems)

    def lookup(values: tuple[int, ...]) -> int:
        if values not in index:
            raise ValueError("algebra not closed under requested operation")
        return index[values]

    minus = binary_table(
        "minus", n, lambda x, y: lookup(RAW_OPS["difference"][1](elems[x].values, elems[y].values))
    )
    rest = binary_table(
        "rest", n, lambda x, y: lookup(RAW_OPS["restrict"][1](elems[x].values, elems[y].values))
    )
    extras = []
    for name in extra_ops:
        if name == "identity":
            extras.append(OpTable("identity", 0, n, (lookup(tuple(range(algebra.carrier.size))),)))
            continue
        arity, raw = RAW_OPS[name]
        entries = tuple(
            lookup(raw(*(elems[i].values for i in args)))
            for args in product(range(n), repeat=arity)
        )
        extras.append(OpTable(name, arity, n, entries))
    return FiniteAlgebra(names, minus, rest, tuple(extras))


# ---------------------------------------------------------------------------
# axiom validation

@dataclass(frozen=True)
class AxiomViolation:
    axiom: str
    witnesses: tuple[str, ...]


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[AxiomViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        if self.ok:
            return "valid: all five defining equations hold"
        lines = [f"{len(self.violations)} violation(s):"]
        lines += [f"  {v.axiom} at ({', '.join(v.witnesses)})" for v in self.violations]
        return "\n".join(lines)


def validate_axioms(algebra: FiniteAlgebra) -> ValidationReport:
    """Check the five defining equations on every element tuple.

    A non-constant x - x (no common bottom) is reported on its own and
    short-circuits the equation checks, which all presuppose a bottom.
    """
    n = algebra.n
    M = algebra.minus.as_array()
    R = algebra.rest.as_array()
    diag = M[np.arange(n), np.arange(n)]
    if not np.all(diag == diag[0]):
        bad = [algebra.elements[i] for i in np.nonzero(diag != diag[0])[0]]
        return ValidationReport(
            (AxiomViolation("no-constant-bottom", tuple(bad)),)
        )

    ar = np.arange(n)
    meet = M[ar[:, None], M]  # meet[x, y] = x - (x - y)
    A2, B2 = np.meshgrid(ar, ar, indexing="ij")
    A3, B3, C3 = np.meshgrid(ar, ar, ar, indexing="ij")

    checks = {
        # a - (b - a) = a
        "law-1": (M[A2, M[B2, A2]], A2),
        # a . b = b . a
        "law-2": (meet, meet.T),
        # (a - b) - c = (a - c) - b
        "law-3": (M[M[A3, B3], C3], M[M[A3, C3], B3]),
        # (a | c) . (b | c) = (a | b) | c
        "law-4": (meet[R[A3, C3], R[B3, C3]], R[R[A3, B3], C3]),
        # (a . b) | a = a . b
        "law-5": (R[meet, A2], meet),
    }
    violations: list[AxiomViolation] = []
    for axiom, (lhs, rhs) in checks.items():
        for idx in np.argwhere(lhs != rhs):
            violations.append(
                AxiomViolation(axiom, tuple(algebra.elements[i] for i in idx))
            )
    return ValidationReport(tuple(violations))


# ---------------------------------------------------------------------------
# derived structure

def bottom(algebra: FiniteAlgebra) -> int:
    return algebra.m(0, 0)


def derived_meet(algebra: FiniteAlgebra, x: int, y: int) -> int:
    return algebra.m(x, algebra.m(x, y))


def leq(algebra: FiniteAlgebra, x: int, y: int) -> bool:
    return derived_meet(algebra, x, y) == x


def domain_preorder(algebra: FiniteAlgebra, x: int, y: int) -> bool:
    """x has smaller domain than y: x <= y | x."""
    return leq(algebra, x, algebra.r(y, x))


def domain_equiv_classes(algebra: FiniteAlgebra) -> tuple[tuple[int, ...], ...]:
    n = algebra.n
    seen: set[int] = set()
    classes: list[tuple[int, ...]] = []
    for x in range(n):
        if x in seen:
            continue
        cls = tuple(
            y
            for y in range(n)
            if domain_preorder(algebra, x, y) and domain_preorder(algebra, y, x)
        )
        seen.update(cls)
        classes.append(cls)
    return tuple(classes)


def compatible(algebra: FiniteAlgebra, x: int, y: int) -> bool:
    return algebra.r(x, y) == algebra.r(y, x)


def join_if_exists(algebra: FiniteAlgebra, members: Iterable[int]) -> Optional[int]:
    """Least upper bound of the set in the intrinsic order, if it exists."""
    members = list(members)
    if not members:
        return bottom(algebra)
    uppers = [
        u for u in range(algebra.n) if all(leq(algebra, s, u) for s in members)
    ]
    for u in uppers:
        if all(leq(algebra, u, v) for v in uppers):
            return u
    return None


def is_fin_compatibly_complete(algebra: FiniteAlgebra) -> bool:
    """Every compatible pair has a join (pairs suffice for finite families)."""
    n = algebra.n
    return all(
        join_if_exists(algebra, (x, y)) is not None
        for x in range(n)
        for y in range(x + 1, n)
        if compatible(algebra, x, y)
    )


def derived_override(algebra: FiniteAlgebra, x: int, y: int) -> int:
    """x extended by y off the domain of x: the join of x and y - (x | y)."""
    complement = algebra.m(y, algebra.r(x, y))
    join = join_if_exists(algebra, (x, complement))
    if join is None:
        raise ValueError("override needs a finitarily compatibly complete algebra")
    return join


def is_subtraction_algebra(algebra: FiniteAlgebra) -> bool:
    n = algebra.n
    return all(
        algebra.r(x, y) == derived_meet(algebra, x, y)
        for x in range(n)
        for y in range(n)
    )


# ---------------------------------------------------------------------------
# maps between algebras

@dataclass(frozen=True)
class AlgebraMap:
    source: FiniteAlgebra
    target: FiniteAlgebra
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.table) != self.source.n:
            raise ValueError("map table must cover every source element")
        for t in self.table:
            if not 0 <= t < self.target.n:
                raise ValueError("map table value outside target")

    def __call__(self, x: int) -> int:
        return self.table[x]

    def compose(self, other: "AlgebraMap") -> "AlgebraMap":
        """self after other."""
        if other.target is not self.source and other.target != self.source:
            raise ValueError("maps do not compose")
        return AlgebraMap(
            other.source, self.target, tuple(self.table[t] for t in other.table)
        )

    def is_identity(self) -> bool:
        return self.source == self.target and self.table == tuple(range(self.source.n))


def identity_map(algebra: FiniteAlgebra) -> AlgebraMap:
    return AlgebraMap(algebra, algebra, tuple(range(algebra.n)))


@dataclass(frozen=True)
class HomReport:
    violations: tuple[str, ...]
    injective: bool

    @property
    def is_hom(self) -> bool:
        return not self.violations

    @property
    def is_embedding(self) -> bool:
        return self.is_hom and self.injective


def hom_check(mapping: AlgebraMap) -> HomReport:
    """Check preservation of difference, restriction, and every operation the
    two algebras share by name; injectivity is reported separately."""
    src, tgt, h = mapping.source, mapping.target, mapping.table
    violations: list[str] = []
    for x in range(src.n):
        for y in range(src.n):
            if h[src.m(x, y)] != tgt.m(h[x], h[y]):
                violations.append(
                    f"minus not preserved at ({src.elements[x]}, {src.elements[y]})"
                )
            if h[src.r(x, y)] != tgt.r(h[x], h[y]):
                violations.append(
                    f"rest not preserved at ({src.elements[x]}, {src.elements[y]})"
                )
    shared = set(src.op_names()) & set(tgt.op_names())
    for name in sorted(shared):
        s_op, t_op = src.op(name), tgt.op(name)
        if s_op.arity != t_op.arity:
            violations.append(f"operation {name} has mismatched arities")
            continue
        for args in product(range(src.n), repeat=s_op.arity):
            if h[s_op(*args)] != t_op(*(h[a] for a in args)):
                witness = ", ".join(src.elements[a] for a in args)
                violations.append(f"operation {name} not preserved at ({witness})")
    injective = len(set(h)) == len(h)
    return HomReport(tuple(violations), injective)


def is_proper_hom(mapping: AlgebraMap) -> bool:
    """Every target element lies below the image of some source element."""
    if not hom_check(mapping).is_hom:
        raise ValueError("properness is only defined for homomorphisms")
    tgt = mapping.target
    return all(
        any(leq(tgt, b, mapping.table[a]) for a in range(mapping.source.n))
        for b in range(tgt.n)
    )


def _invariant(algebra: FiniteAlgebra, x: int) -> tuple[int, ...]:
    n = algebra.n
    downset = sum(leq(algebra, y, x) for y in range(n))
    compat_degree = sum(compatible(algebra, x, y) for y in range(n))
    cls = next(
        len(c) for c in domain_equiv_classes(algebra) if x in c
    )
    return (downset, cls, compat_degree, int(x == bottom(algebra)))


def isomorphism_search(
    a: FiniteAlgebra, b: FiniteAlgebra
) -> Optional[AlgebraMap]:
    """First bijective homomorphism in deterministic search order, if any.

    Prunes by element invariants (downset size, domain-class size,
    compatibility degree); intended for small algebras only.
    """
    if a.n > ISO_SEARCH_CAP or b.n > ISO_SEARCH_CAP:
        raise ValueError(f"isomorphism search capped at {ISO_SEARCH_CAP} elements")
    if a.n != b.n:
        return None
    if sorted(a.op_names()) != sorted(b.op_names()):
        return None
    inv_a = [_invariant(a, x) for x in range(a.n)]
    inv_b = [_invariant(b, x) for x in range(b.n)]
    if sorted(inv_a) != sorted(inv_b):
        return None

    n = a.n
    assignment: list[int] = []
    used = [False] * n

    def consistent(x: int, y: int) -> bool:
        def image(z: int) -> Optional[int]:
            if z < len(assignment):
                return assignment[z]
            return y if z == x else None

        for u in (*range(len(assignment)), x):
            for v in (*range(len(assignment)), x):
                hu, hv = image(u), image(v)
                for res, t_res in (
                    (a.m(u, v), b.m(hu, hv)),
                    (a.r(u, v), b.r(hu, hv)),
                ):
                    h_res = image(res)
                    if h_res is not None and h_res != t_res:
                        return False
        return True

    def backtrack() -> Optional[tuple[int, ...]]:
        x = len(assignment)
        if x == n:
            return tuple(assignment)
        for y in range(n):
            if used[y] or inv_a[x] != inv_b[y]:
                continue
            if not consistent(x, y):
                continue
            used[y] = True
            assignment.append(y)
            found = backtrack()
            if found is not None:
                return found
            assignment.pop()
            used[y] = False
        return None

    table = backtrack()
    if table is None:
        return None
    candidate = AlgebraMap(a, b, table)
    report = hom_check(candidate)
    if not report.is_embedding:  # extra ops may rule the candidate out
        return _full_search(a, b, inv_a, inv_b)
    return candidate


def _full_search(
    a: FiniteAlgebra, b: FiniteAlgebra, inv_a, inv_b
) -> Optional[AlgebraMap]:
    # fallback: exhaustive over invariant-respecting bijections, full hom check
    n = a.n
    buckets: dict[tuple[int, ...], list[int]] = {}
    for y in range(n):
        buckets.setdefault(inv_b[y], []).append(y)

    def extend(x: int, used: set[int], table: list[int]) -> Optional[AlgebraMap]:
        if x == n:
            candidate = AlgebraMap(a, b, tuple(table))
            if hom_check(candidate).is_embedding:
                return candidate
            return None
        for y in buckets.get(inv_a[x], []):
            if y in used:
                continue
            table.append(y)
            used.add(y)
            found = extend(x + 1, used, table)
            if found is not None:
                return found
            used.discard(y)
            table.pop()
        return None

    return extend(0, set(), [])
