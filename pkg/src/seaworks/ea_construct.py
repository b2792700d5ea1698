"""Constructions: products, horizontal sums, intervals, lex extensions.

Also isomorphism search between finite tables, transport of products along
isomorphisms, and the named catalog of example algebras.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .ea_core import (
    AxiomFailure,
    FiniteEffectAlgebra,
    LexExtension,
    OmegaOmegaStar,
    ProductTable,
    derive_order,
    verified,
)

_ATOM_NAMES = "xyzwuv"


def _pair_name(parts):
    return "(" + ",".join(parts) + ")"


class ProductAlgebra(FiniteEffectAlgebra):
    """Cartesian product; remembers the components of each element."""

    def __init__(self, factors, elements, sums, zero, one, name, components):
        super().__init__(elements, sums, zero=zero, one=one, name=name)
        self.factors = factors
        self.components = components
        self.names = {v: k for k, v in components.items()}

    def marker(self, j: int) -> str:
        """``f_j``: the unit in factor ``j`` and zero elsewhere (always sharp)."""
        comp = tuple(F.one if i == j else F.zero for i, F in enumerate(self.factors))
        return self.names[comp]

    def embed(self, j: int, a: str) -> str:
        comp = tuple(a if i == j else F.zero for i, F in enumerate(self.factors))
        return self.names[comp]


def cartesian_product(Es: list[FiniteEffectAlgebra], name: str | None = None) -> ProductAlgebra:
    """Componentwise algebra on the product of the factors' carriers."""
    if not Es:
        raise ValueError("cartesian_product needs at least one factor")
    tuples = list(itertools.product(*[F.elements for F in Es]))
    zero = tuple(F.zero for F in Es)
    one = tuple(F.one for F in Es)

    def label(t):
        if t == zero:
            return "0"
        if t == one:
            return "1"
        return _pair_name(t)

    components = {label(t): t for t in tuples}
    sums = []
    for s, t in itertools.combinations_with_replacement(tuples, 2):
        parts = [F.oplus(x, y) for F, x, y in zip(Es, s, t)]
        if all(p is not None for p in parts):
            sums.append((label(s), label(t), label(tuple(parts))))
    name = name or " x ".join(F.name for F in Es)
    return ProductAlgebra(list(Es), [label(t) for t in tuples], sums, "0", "1", name, components)


def horizontal_sum(Es: list[FiniteEffectAlgebra], name: str | None = None) -> FiniteEffectAlgebra:
    """Glue summands at shared 0 and 1; no sums across summands.

    Proper elements of summand ``i`` (1-based) are renamed ``i:name``.
    """
    elements = ["0"]
    sums = []
    for i, F in enumerate(Es, start=1):

        def rn(x, F=F, i=i):
            if x == F.zero:
                return "0"
            if x == F.one:
                return "1"
            return f"{i}:{x}"

        elements += [rn(x) for x in F.elements if x not in (F.zero, F.one)]
        sums += [(rn(a), rn(b), rn(c)) for a, b, c in F.sum_triples()]
    elements.append("1")
    name = name or "HS(" + ",".join(F.name for F in Es) + ")"
    return FiniteEffectAlgebra(elements, sums, name=name)


def interval_algebra(E, b, name: str | None = None) -> FiniteEffectAlgebra:
    """``[0, b]`` with ``c + d`` kept when it stays below ``b``; unit ``b``."""
    if b == E.zero:
        raise ValueError("interval needs b != 0")
    if isinstance(E, OmegaOmegaStar):
        carrier = E.down_set(b)
        leq = E.leq
        names = [str(x) for x in carrier]
        sums = []
        for c, d in itertools.combinations_with_replacement(carrier, 2):
            s = E.oplus(c, d)
            if s is not None and leq(s, b):
                sums.append((str(c), str(d), str(s)))
        return FiniteEffectAlgebra(names, sums, zero=str(E.zero), one=str(b),
                                   name=name or f"[0,{b}]")
    order = derive_order(E)
    carrier = order.lower_bounds(b)
    sums = []
    for c, d in itertools.combinations_with_replacement(carrier, 2):
        s = E.oplus(c, d)
        if s is not None and order.leq(s, b):
            sums.append((c, d, s))
    return FiniteEffectAlgebra(carrier, sums, zero=E.zero, one=b, name=name or f"[0,{b}]")


def lex_extension(E: FiniteEffectAlgebra, window: int = 20) -> LexExtension:
    """Integer lexicographic extension; only ``(0,0)`` and ``(1,0)`` stay sharp."""
    verified(E)
    return LexExtension(E, default_window=window)


# ---------------------------------------------------------------- isomorphisms


def _invariants(E: FiniteEffectAlgebra):
    order = derive_order(E)
    out = {}
    for x in E.elements:
        row = E._rows[E.index[x]]
        out[x] = (x == E.zero, x == E.one, sum(k >= 0 for k in row),
                  E._rows[E.index[x]][E.index[x]] >= 0,
                  len(order.lower_bounds(x)), len(order.upper_bounds(x)))
    return out


def find_isomorphism(E: FiniteEffectAlgebra, F: FiniteEffectAlgebra) -> dict | None:
    """Brute-force search for a bijection preserving 0, 1 and the sum table.

    Candidates are pruned by degree/down-set invariants; partial maps are
    checked against every already-assigned pair.
    """
    if E.n != F.n:
        return None
    ie, if_ = _invariants(E), _invariants(F)
    if sorted(ie.values()) != sorted(if_.values()):
        return None
    order = sorted(E.elements, key=lambda x: (ie[x][4], E.index[x]))
    cands = {x: [y for y in F.elements if if_[y] == ie[x]] for x in order}
    fwd: dict = {}
    used: set = set()

    def consistent(x, y):
        for a, b in fwd.items():
            for u, v in ((x, a), (a, x), (x, x)):
                s = E.oplus(u, v)
                fu = y if u == x else fwd[u]
                fv = y if v == x else fwd[v]
                t = F.oplus(fu, fv)
                if (s is None) != (t is None):
                    return False
                if s is not None:
                    img = y if s == x else fwd.get(s)
                    if img is not None and img != t:
                        return False
        s = E.oplus(x, x)
        t = F.oplus(y, y)
        if (s is None) != (t is None):
            return False
        return True

    def go(k):
        if k == len(order):
            return True
        x = order[k]
        for y in cands[x]:
            if y in used or not consistent(x, y):
                continue
            fwd[x] = y
            used.add(y)
            if go(k + 1):
                return True
            del fwd[x]
            used.discard(y)
        return False

    if not go(0):
        return None
    iso = EAIsomorphism(E, F, dict(fwd))
    return iso.forward if iso.is_valid() else None


@dataclass
class EAIsomorphism:
    source: FiniteEffectAlgebra
    target: FiniteEffectAlgebra
    forward: dict

    @property
    def inverse(self) -> dict:
        return {v: k for k, v in self.forward.items()}

    def is_valid(self) -> bool:
        E, F, f = self.source, self.target, self.forward
        if set(f) != set(E.elements) or sorted(f.values()) != sorted(F.elements):
            return False
        if f[E.zero] != F.zero or f[E.one] != F.one:
            return False
        for a, b in itertools.product(E.elements, repeat=2):
            s = E.oplus(a, b)
            t = F.oplus(f[a], f[b])
            if (s is None) != (t is None):
                return False
            if s is not None and f[s] != t:
                return False
        return True

    def verify(self):
        if not self.is_valid():
            raise ValueError("map is not an effect algebra isomorphism")
        return self


def transport_product(iso: EAIsomorphism, t: ProductTable) -> ProductTable:
    """``a * b = phi(phi^-1(a) o phi^-1(b))`` on the target algebra."""
    iso.verify()
    f, g = iso.forward, iso.inverse
    return ProductTable.from_function(iso.target, lambda a, b: f[t(g[a], g[b])])


# ---------------------------------------------------------------- catalog


def chain(n: int) -> FiniteEffectAlgebra:
    """``{0, a, 2a, ..., na = 1}``; ``chain(1)`` is C2, ``chain(2)`` is C3."""
    if n < 1:
        raise ValueError("chain needs n >= 1")

    def nm(k):
        return "0" if k == 0 else "1" if k == n else ("a" if k == 1 else f"{k}a")

    sums = [(nm(i), nm(j), nm(i + j)) for i in range(1, n) for j in range(i, n) if i + j <= n]
    return FiniteEffectAlgebra([nm(k) for k in range(n + 1)], sums,
                               name=f"C{n + 1}")


def boolean(k: int) -> FiniteEffectAlgebra:
    """Subsets of ``k`` atoms; disjoint sets sum to their union."""
    if not 1 <= k <= len(_ATOM_NAMES):
        raise ValueError(f"boolean(k) needs 1 <= k <= {len(_ATOM_NAMES)}")
    atoms = _ATOM_NAMES[:k]
    subsets = [frozenset(c) for r in range(k + 1) for c in itertools.combinations(atoms, r)]
    full = frozenset(atoms)

    def nm(s):
        return "0" if not s else "1" if s == full else "".join(a for a in atoms if a in s)

    sums = [(nm(s), nm(t), nm(s | t))
            for s, t in itertools.combinations_with_replacement(subsets, 2) if not s & t]
    return FiniteEffectAlgebra([nm(s) for s in subsets], sums, name=f"B{2 ** k}")


def boolean_meet(E: FiniteEffectAlgebra) -> ProductTable:
    """The meet product on a catalog Boolean algebra (elements named by atoms)."""
    k = E.n.bit_length() - 1
    full = frozenset(_ATOM_NAMES[:k])

    def as_set(x):
        if x == "0":
            return frozenset()
        if x == "1":
            return full
        return frozenset(x)

    by_set = {as_set(x): x for x in E.elements}
    return ProductTable.from_function(E, lambda a, b: by_set[as_set(a) & as_set(b)])


def diamond() -> FiniteEffectAlgebra:
    return FiniteEffectAlgebra(["0", "a", "b", "1"], [("a", "a", "1"), ("b", "b", "1")],
                               name="D")


def catalog(name: str, *params):
    """Named example models.

    ``chain n``, ``boolean k``, ``diamond`` and ``omega_omega_star`` return
    effect algebras from this package's core; ``unit_interval``,
    ``full_fuzzy X`` and ``hilbert d`` return the numeric models.
    """
    try:
        if name == "chain":
            (n,) = params
            return verified(chain(int(n)))
        if name == "boolean":
            (k,) = params
            return verified(boolean(int(k)))
        if name == "diamond":
            if params:
                raise TypeError
            return verified(diamond())
        if name == "omega_omega_star":
            return OmegaOmegaStar(*[int(p) for p in params])
        if name == "unit_interval":
            from .fuzzy_sea import FullFuzzy
            if params:
                raise TypeError
            return FullFuzzy(("t",))
        if name == "full_fuzzy":
            from .fuzzy_sea import FullFuzzy
            (xs,) = params
            if isinstance(xs, str):
                xs = xs.split(",")
            return FullFuzzy(tuple(xs))
        if name == "hilbert":
            from .hilbert_effects import HilbertEffects
            (d,) = params
            return HilbertEffects(int(d))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, AxiomFailure):
            raise
        raise ValueError(f"bad parameters for {name}: {params!r}") from None
    raise ValueError(f"unknown catalog entry {name!r}")
