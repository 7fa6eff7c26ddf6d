"""Shared corpus: every closure of small seed sets, deduplicated.

Criterion-style tests quantify over all difference/restriction closures of at
most two partial functions on carriers of size up to three; generating that
corpus once keeps the suite fast.
"""
from __future__ import annotations

from itertools import combinations_with_replacement

import pytest

from drest.dra import FiniteAlgebra, from_concrete
from drest.fixtures import FIXTURES, get_fixture
from drest.pfun import Carrier, ConcretePFAlgebra, closure_generate, enumerate_all_pfs


def _closure_corpus(max_carrier: int = 3) -> list[ConcretePFAlgebra]:
    algebras: list[ConcretePFAlgebra] = []
    seen: set[tuple] = set()
    for size in range(1, max_carrier + 1):
        carrier = Carrier(size)
        pool = enumerate_all_pfs(carrier)
        for seeds in combinations_with_replacement(pool, 2):
            closed = closure_generate(carrier, list(seeds))
            key = (size, tuple(f.values for f in closed.elements))
            if key in seen:
                continue
            seen.add(key)
            algebras.append(closed)
    return algebras


@pytest.fixture(scope="session")
def closure_corpus() -> list[ConcretePFAlgebra]:
    return _closure_corpus()


@pytest.fixture(scope="session")
def valid_fixture_algebras() -> dict[str, FiniteAlgebra]:
    out = {}
    for name in FIXTURES:
        fixture = get_fixture(name)
        if name != "broken_restriction":
            out[name] = fixture.algebra
    return out


def abstract(concrete: ConcretePFAlgebra, extra_ops=()) -> FiniteAlgebra:
    return from_concrete(concrete, extra_ops)
