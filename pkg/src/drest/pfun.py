"""Finite partial functions on a shared indexed base set.

Every value is a partial self-map on ``{0, ..., size-1}``, stored as a
fixed-length tuple with ``-1`` marking "undefined".  All operations are pure;
closures of seed sets under the named operations provide genuine algebras of
partial functions that the abstract layer is tested against.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Optional, Sequence

UNDEF = -1

ENUMERATE_SIZE_CAP = 4
CLOSURE_SIZE_CAP = 4


class CarrierMismatch(ValueError):
    """Two partial functions live on different carriers."""


@dataclass(frozen=True)
class Carrier:
    """An indexed base set; points are 0-based indices, labels are cosmetic."""

    size: int
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("carrier size must be at least 1")
        if self.labels is not None:
            if len(self.labels) != self.size:
                raise ValueError("labels must have one entry per point")
            if len(set(self.labels)) != self.size:
                raise ValueError("labels must be pairwise distinct")

    def label(self, point: int) -> str:
        return self.labels[point] if self.labels is not None else str(point)


@dataclass(frozen=True)
class PartialFunction:
    """A partial self-map, functional by construction (one value per point)."""

    carrier: Carrier
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.carrier.size:
            raise ValueError("value vector length must equal carrier size")
        for v in self.values:
            if v != UNDEF and not 0 <= v < self.carrier.size:
                raise ValueError(f"value {v} outside carrier")

    @classmethod
    def from_graph(cls, carrier: Carrier, pairs: Iterable[tuple[int, int]]) -> "PartialFunction":
        values = [UNDEF] * carrier.size
        for x, y in pairs:
            if not 0 <= x < carrier.size:
                raise ValueError(f"point {x} outside carrier")
            if values[x] != UNDEF and values[x] != y:
                raise ValueError(f"two values given for point {x}")
            values[x] = y
        return cls(carrier, tuple(values))

    @classmethod
    def empty(cls, carrier: Carrier) -> "PartialFunction":
        return cls(carrier, (UNDEF,) * carrier.size)

    @classmethod
    def identity(cls, carrier: Carrier) -> "PartialFunction":
        return cls(carrier, tuple(range(carrier.size)))

    @property
    def graph(self) -> tuple[tuple[int, int], ...]:
        return tuple((x, v) for x, v in enumerate(self.values) if v != UNDEF)

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(x for x, v in enumerate(self.values) if v != UNDEF)

    @property
    def image(self) -> frozenset[int]:
        return frozenset(v for v in self.values if v != UNDEF)

    def __call__(self, point: int) -> Optional[int]:
        v = self.values[point]
        return None if v == UNDEF else v

    @property
    def sort_key(self) -> tuple[int, ...]:
        # canonical order: lexicographic on value+1, with 0 meaning undefined
        return tuple(v + 1 for v in self.values)

    @property
    def is_empty(self) -> bool:
        return all(v == UNDEF for v in self.values)

    def is_injective(self) -> bool:
        seen = set()
        for v in self.values:
            if v != UNDEF:
                if v in seen:
                    return False
                seen.add(v)
        return True

    def render(self) -> str:
        if self.is_empty:
            return "{}"
        lab = self.carrier.label
        return "{" + ",".join(f"{lab(x)}:{lab(y)}" for x, y in self.graph) + "}"

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"PartialFunction({self.render()})"


# ---------------------------------------------------------------------------
# raw operations on value vectors (shared by the public wrappers and the
# closure engine, which avoids dataclass overhead in hot loops)

def _difference(f: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    return tuple(fv if fv != UNDEF and fv != gv else UNDEF for fv, gv in zip(f, g))


def _restrict(f: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    return tuple(gv if fv != UNDEF else UNDEF for fv, gv in zip(f, g))


def _meet(f: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    return tuple(fv if fv != UNDEF and fv == gv else UNDEF for fv, gv in zip(f, g))


def _override(f: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    return tuple(fv if fv != UNDEF else gv for fv, gv in zip(f, g))


def _compose(f: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    # (f o g)(x) = f(g(x))
    return tuple(f[gv] if gv != UNDEF else UNDEF for gv in g)


def _domain(f: Sequence[int]) -> tuple[int, ...]:
    return tuple(x if v != UNDEF else UNDEF for x, v in enumerate(f))


def _range(f: Sequence[int]) -> tuple[int, ...]:
    image = {v for v in f if v != UNDEF}
    return tuple(x if x in image else UNDEF for x in range(len(f)))


def _fixset(f: Sequence[int]) -> tuple[int, ...]:
    return tuple(x if v == x else UNDEF for x, v in enumerate(f))


def _range_restrict(f: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    # keep (x, y) of g whose value y lies in dom(f)
    return tuple(gv if gv != UNDEF and f[gv] != UNDEF else UNDEF for gv in g)


def _antidomain(f: Sequence[int]) -> tuple[int, ...]:
    return tuple(x if v == UNDEF else UNDEF for x, v in enumerate(f))


def _converse(f: Sequence[int]) -> tuple[int, ...]:
    out = [UNDEF] * len(f)
    for x, v in enumerate(f):
        if v != UNDEF:
            if out[v] != UNDEF:
                raise ValueError("converse of a non-injective partial function")
            out[v] = x
    return tuple(out)


def _union_if_compatible(f: Sequence[int], g: Sequence[int]) -> Optional[tuple[int, ...]]:
    out = []
    for fv, gv in zip(f, g):
        if fv != UNDEF and gv != UNDEF and fv != gv:
            return None
        out.append(fv if fv != UNDEF else gv)
    return tuple(out)


def _require_shared_carrier(f: PartialFunction, g: PartialFunction) -> None:
    if f.carrier != g.carrier:
        raise CarrierMismatch("operands live on different carriers")


def _wrap(op: Callable[..., tuple[int, ...]]) -> Callable[..., PartialFunction]:
    def binary(f: PartialFunction, g: PartialFunction) -> PartialFunction:
        _require_shared_carrier(f, g)
        return PartialFunction(f.carrier, op(f.values, g.values))

    return binary


pf_difference = _wrap(_difference)
pf_restrict = _wrap(_restrict)
pf_meet = _wrap(_meet)
pf_override = _wrap(_override)
pf_compose = _wrap(_compose)
pf_range_restrict = _wrap(_range_restrict)


def pf_domain(f: PartialFunction) -> PartialFunction:
    """Identity function restricted to dom(f)."""
    return PartialFunction(f.carrier, _domain(f.values))


def pf_range(f: PartialFunction) -> PartialFunction:
    """Identity function restricted to the image of f."""
    return PartialFunction(f.carrier, _range(f.values))


def pf_fixset(f: PartialFunction) -> PartialFunction:
    """Identity function restricted to the fixed points of f."""
    return PartialFunction(f.carrier, _fixset(f.values))


def pf_antidomain(f: PartialFunction) -> PartialFunction:
    """Identity function restricted to the complement of dom(f)."""
    return PartialFunction(f.carrier, _antidomain(f.values))


def pf_converse(f: PartialFunction) -> PartialFunction:
    """Inverse of an injective partial function; errors on non-injective input."""
    return PartialFunction(f.carrier, _converse(f.values))


def pf_union_if_compatible(f: PartialFunction, g: PartialFunction) -> Optional[PartialFunction]:
    """The union f | g when it is functional, None otherwise."""
    _require_shared_carrier(f, g)
    raw = _union_if_compatible(f.values, g.values)
    return None if raw is None else PartialFunction(f.carrier, raw)


def pf_compatible(f: PartialFunction, g: PartialFunction) -> bool:
    """True when f and g agree on the intersection of their domains."""
    _require_shared_carrier(f, g)
    return all(
        fv == UNDEF or gv == UNDEF or fv == gv for fv, gv in zip(f.values, g.values)
    )


# name -> (arity, raw implementation); closure and classification both key off
# this registry.  "identity" is a constant (arity 0).
RAW_OPS: dict[str, tuple[int, Callable[..., tuple[int, ...]]]] = {
    "difference": (2, _difference),
    "restrict": (2, _restrict),
    "meet": (2, _meet),
    "override": (2, _override),
    "compose": (2, _compose),
    "domain": (1, _domain),
    "range": (1, _range),
    "fixset": (1, _fixset),
    "range_restrict": (2, _range_restrict),
    "antidomain": (1, _antidomain),
    "converse": (1, _converse),
}


@dataclass(frozen=True)
class ConcretePFAlgebra:
    """A duplicate-free, canonically ordered family of partial functions.

    Instances produced by :func:`closure_generate` contain the empty function
    and are closed under difference and restriction (plus any further
    operations requested at generation time).
    """

    carrier: Carrier
    elements: tuple[PartialFunction, ...]

    def __post_init__(self) -> None:
        keys = [f.sort_key for f in self.elements]
        if sorted(set(keys)) != keys:
            raise ValueError("elements must be duplicate-free and canonically ordered")
        for f in self.elements:
            if f.carrier != self.carrier:
                raise CarrierMismatch("element on a foreign carrier")

    def index(self, f: PartialFunction) -> int:
        return self._index_map[f.values]

    @property
    def _index_map(self) -> dict[tuple[int, ...], int]:
        return {f.values: i for i, f in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)

    def is_closed_under(self, op_names: Iterable[str]) -> bool:
        members = {f.values for f in self.elements}
        for name in op_names:
            if name == "identity":
                if tuple(range(self.carrier.size)) not in members:
                    return False
                continue
            arity, raw = RAW_OPS[name]
            for args in product(self.elements, repeat=arity):
                try:
                    result = raw(*(a.values for a in args))
                except ValueError:
                    return False
                if result not in members:
                    return False
        return True


def closure_generate(
    carrier: Carrier,
    seeds: Sequence[PartialFunction],
    ops: Iterable[str] = ("difference", "restrict"),
) -> ConcretePFAlgebra:
    """Least family containing the seeds and the empty function, closed under
    the named operations.  Difference and restriction are mandatory."""
    op_names = tuple(ops)
    if "difference" not in op_names or "restrict" not in op_names:
        raise ValueError("closure must include difference and restrict")
    if carrier.size > CLOSURE_SIZE_CAP:
        raise ValueError(f"closure carrier capped at size {CLOSURE_SIZE_CAP}")
    for f in seeds:
        if f.carrier != carrier:
            raise CarrierMismatch("seed on a foreign carrier")

    # "identity" is a constant, so it just seeds the closure
    table = [RAW_OPS[name] for name in op_names if name != "identity"]
    members: set[tuple[int, ...]] = {(UNDEF,) * carrier.size}
    if "identity" in op_names:
        members.add(tuple(range(carrier.size)))
    members.update(f.values for f in seeds)
    frontier = list(members)
    while frontier:
        fresh: list[tuple[int, ...]] = []
        current = list(members)
        for arity, raw in table:
            if arity == 0:
                candidates = [raw()]
            elif arity == 1:
                candidates = [raw(f) for f in frontier]
            else:
                candidates = []
                for f in frontier:
                    for g in current:
                        candidates.append(raw(f, g))
                        candidates.append(raw(g, f))
            for c in candidates:
                if c not in members:
                    members.add(c)
                    fresh.append(c)
        frontier = fresh

    ordered = sorted(members, key=lambda v: tuple(x + 1 for x in v))
    return ConcretePFAlgebra(carrier, tuple(PartialFunction(carrier, v) for v in ordered))


def enumerate_all_pfs(carrier: Carrier) -> tuple[PartialFunction, ...]:
    """All (size+1)^size partial functions on the carrier, canonical order."""
    if carrier.size > ENUMERATE_SIZE_CAP:
        raise ValueError(f"enumeration capped at carrier size {ENUMERATE_SIZE_CAP}")
    choices = [UNDEF] + list(range(carrier.size))
    return tuple(
        PartialFunction(carrier, values)
        for values in product(choices, repeat=carrier.size)
    )
