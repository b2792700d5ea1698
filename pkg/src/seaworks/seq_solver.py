"""Exhaustive search for sequential products on finite effect algebras.

The search fills the product table cell by cell. Candidate sets are
bitmasks over the carrier and are narrowed by rules that hold in every
sequential effect algebra:

* S1: each row ``b -> a.b`` is additive, so ``a.b + a.c = a.(b+c)``;
  together with ``a.1 = a`` this also gives ``a.b <= a``.
* S2: ``1.b = b``.
* S3: ``a.b = 0`` forces ``b.a = 0``.
* S4 and S5: once ``a.b`` and ``b.a`` are decided and equal, the implied
  commutations and the associativity law are imposed as cell equalities.

Every table the search emits is re-checked by :func:`check_sea_axioms`,
which does not share code with the propagation.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import _kernels
from .ea_core import (
    FiniteEffectAlgebra,
    ProductTable,
    check_effect_axioms,
    check_sea_axioms,
    derive_order,
)

DEFAULT_MAX_SIZE = 16
HARD_MAX_SIZE = 64


class CarrierTooLarge(ValueError):
    pass


class MultipleProducts(ValueError):
    """More than one sequential product exists; carries two of them."""

    def __init__(self, first: ProductTable, second: ProductTable):
        super().__init__("effect algebra admits more than one sequential product")
        self.witnesses = (first, second)


class UnsoundSearch(AssertionError):
    """A table emitted by the search failed independent verification."""


@dataclass
class SolveOutcome:
    algebra: FiniteEffectAlgebra
    tables: list[ProductTable]
    truncated: bool
    limit: int
    stats: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        if not self.tables:
            return "none"
        if len(self.tables) == 1 and not self.truncated:
            return "unique"
        return "multiple"

    @property
    def count(self) -> int:
        return len(self.tables)


def _cell_order(E: FiniteEffectAlgebra, order) -> list[int]:
    """Static branching priority: atom rows first, atom columns first."""
    n = E.n
    height = {i: len(order.lower_bounds(E.elements[i])) for i in range(n)}
    rank = sorted(range(n), key=lambda i: (height[i], i))
    return [a * n + b for a in rank for b in rank]


def enumerate_products(E: FiniteEffectAlgebra, limit: int = 1000,
                       max_size: int = DEFAULT_MAX_SIZE, backend=None) -> SolveOutcome:
    """All sequential products on ``E``, up to ``limit`` of them.

    The search asks for ``limit + 1`` tables so truncation is reported
    explicitly. Tables are returned in lexicographic order of their
    flattened index form.
    """
    if limit < 1:
        raise ValueError("limit must be at least 1")
    if E.n > min(max_size, HARD_MAX_SIZE):
        raise CarrierTooLarge(f"{E.name} has {E.n} elements; bound is {min(max_size, HARD_MAX_SIZE)}")
    rep = check_effect_axioms(E)
    if not rep.passed:
        f = rep.failures()[0]
        raise ValueError(f"{E.name} is not an effect algebra: {f.name} at {f.witness}")
    kern = backend or _kernels
    order = derive_order(E)
    n = E.n
    le = [0] * n
    for i, a in enumerate(E.elements):
        for j, x in enumerate(E.elements):
            if order.leq(x, a):
                le[i] |= 1 << j
    sums = E.table.tolist()
    comp = E.complement_indices()
    t0 = time.perf_counter()
    raw, stats = kern.search_products(n, sums, le, comp, E.index[E.zero], E.index[E.one],
                                      _cell_order(E, order), limit + 1)
    stats = dict(stats)
    stats["wall_time"] = time.perf_counter() - t0
    stats["backend"] = getattr(kern, "BACKEND", getattr(kern, "__name__", "?"))
    raw = sorted(set(raw))
    truncated = len(raw) > limit
    tables = []
    for flat in raw[:limit]:
        t = ProductTable(E, flat)
        check = check_sea_axioms(E, t)
        if not check.passed:
            f = check.failures()[0]
            raise UnsoundSearch(f"search emitted a table failing {f.name} at {f.witness}")
        tables.append(t)
    return SolveOutcome(E, tables, truncated, limit, stats)


def unique_product(E: FiniteEffectAlgebra, **kw) -> ProductTable | None:
    """The sequential product if there is exactly one, ``None`` if none."""
    out = enumerate_products(E, limit=2, **kw)
    if out.verdict == "multiple":
        raise MultipleProducts(*out.tables[:2])
    return out.tables[0] if out.tables else None


def search_statistics(outcome: SolveOutcome) -> dict:
    s = outcome.stats
    return {
        "verdict": outcome.verdict,
        "solutions": outcome.count,
        "truncated": outcome.truncated,
        "nodes": s.get("nodes", 0),
        "prunes": s.get("prunes", 0),
        "firings": {r: s.get(r, 0) for r in ("S1", "S2", "S3", "S4", "S5")},
        "wall_time": s.get("wall_time", 0.0),
        "backend": s.get("backend"),
    }
