"""Effect algebras: representations, axiom checks and derived order.

Finite algebras are stored as interned element names plus an index table
for the partial sum. Symbolic algebras (omega + omega*, lexicographic
extensions) compute their operations exactly and are checked on finite
windows; every report records the window it was computed on.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, NamedTuple, Sequence

import numpy as np

DEFAULT_WINDOW = 20


class StructureError(ValueError):
    """A table that cannot even be read as a partial operation."""


class AxiomFailure(ValueError):
    """Raised by constructions whose output is expected to verify."""


class EffectAlgebra:
    """Common contract: ``zero``, ``one``, partial ``oplus`` and ``complement``.

    ``oplus`` returns ``None`` when the sum is undefined.
    """

    zero: Any
    one: Any
    finite = False

    def oplus(self, a, b):
        raise NotImplementedError

    def complement(self, a):
        raise NotImplementedError

    def orthogonal(self, a, b) -> bool:
        return self.oplus(a, b) is not None

    def carrier(self, window: int | None = None) -> list:
        raise NotImplementedError

    def witness_pool(self, window: int | None = None) -> list:
        return self.carrier(window)


class FiniteEffectAlgebra(EffectAlgebra):
    """A finite partial algebra given by its sum table.

    ``sums`` is an iterable of ``(a, b, c)`` meaning ``a + b = c``; each
    unordered pair is stored once and mirrored, so a conflicting mirror is a
    :class:`StructureError` rather than an axiom failure. With
    ``implicit_zero`` the rule ``0 + x = x`` is added for every ``x``.
    Axioms are *not* checked here; see :func:`check_effect_axioms`.
    """

    finite = True

    def __init__(self, elements: Sequence[str], sums: Iterable = (), zero="0", one="1",
                 name="E", implicit_zero=True):
        elements = tuple(str(e) for e in elements)
        if len(set(elements)) != len(elements):
            dup = next(e for e in elements if elements.count(e) > 1)
            raise StructureError(f"duplicate element {dup!r}")
        index = {e: i for i, e in enumerate(elements)}
        for special in (zero, one):
            if special not in index:
                raise StructureError(f"undeclared element {special!r}")
        if zero == one:
            raise StructureError("zero and one must differ")
        n = len(elements)
        table = np.full((n, n), -1, dtype=np.int64)

        def put(a, b, c):
            for x in (a, b, c):
                if x not in index:
                    raise StructureError(f"undeclared element {x!r}")
            i, j, k = index[a], index[b], index[c]
            for p, q in ((i, j), (j, i)):
                if table[p, q] >= 0 and table[p, q] != k:
                    raise StructureError(
                        f"conflicting sums {a} + {b} = {elements[table[p, q]]} and {c}")
                table[p, q] = k

        if implicit_zero:
            for e in elements:
                put(zero, e, e)
        for a, b, c in sums:
            put(str(a), str(b), str(c))
        table.setflags(write=False)
        self.name = name
        self.elements = elements
        self.index = index
        self.n = n
        self.zero = zero
        self.one = one
        self.table = table
        self._rows = table.tolist()
        self._comp = None

    def __repr__(self):
        return f"FiniteEffectAlgebra({self.name!r}, n={self.n})"

    def __eq__(self, other):
        if not isinstance(other, FiniteEffectAlgebra):
            return NotImplemented
        return (self.name == other.name and self.elements == other.elements
                and self.zero == other.zero and self.one == other.one
                and np.array_equal(self.table, other.table))

    def __hash__(self):
        return hash((self.name, self.elements))

    def __len__(self):
        return self.n

    def carrier(self, window=None):
        return list(self.elements)

    def oplus(self, a, b):
        k = self._rows[self.index[a]][self.index[b]]
        return None if k < 0 else self.elements[k]

    def complement_indices(self) -> list[int]:
        """Index of the unique complement of each element (A3 required)."""
        if self._comp is None:
            one = self.index[self.one]
            comp = []
            for i, row in enumerate(self._rows):
                hits = [j for j, k in enumerate(row) if k == one]
                if len(hits) != 1:
                    raise StructureError(
                        f"{self.elements[i]} has {len(hits)} complements")
                comp.append(hits[0])
            self._comp = comp
        return self._comp

    def complement(self, a):
        return self.elements[self.complement_indices()[self.index[a]]]

    def sum_triples(self, include_zero=False) -> list[tuple[str, str, str]]:
        """Each defined sum once, as ``(a, b, a + b)`` with ``a`` first in order."""
        z = self.index[self.zero]
        out = []
        for i in range(self.n):
            for j in range(i, self.n):
                k = self._rows[i][j]
                if k < 0 or (not include_zero and z in (i, j)):
                    continue
                out.append((self.elements[i], self.elements[j], self.elements[k]))
        return out

    def relabel(self, mapping: dict, name: str | None = None) -> "FiniteEffectAlgebra":
        m = {e: mapping.get(e, e) for e in self.elements}
        return FiniteEffectAlgebra(
            [m[e] for e in self.elements],
            [(m[a], m[b], m[c]) for a, b, c in self.sum_triples(include_zero=True)],
            zero=m[self.zero], one=m[self.one], name=name or self.name)


# ---------------------------------------------------------------- symbolic


class SymbolicEffectAlgebra(EffectAlgebra):
    """Infinite algebra with exact operations, checked on finite windows."""

    kind = "symbolic"
    default_window = DEFAULT_WINDOW

    def contains(self, x) -> bool:
        raise NotImplementedError

    def window(self, k: int) -> list:
        raise NotImplementedError

    def carrier(self, window=None):
        return self.window(self.default_window if window is None else window)

    def witness_pool(self, window=None):
        # differences of window elements can leave the window (e.g. (na)' - ma)
        k = self.default_window if window is None else window
        return self.window(2 * k)

    def window_table(self, k: int) -> FiniteEffectAlgebra:
        """The window as a finite partial table; sums leaving it are dropped."""
        elems = self.window(k)
        names = [str(x) for x in elems]
        pos = {x: str(x) for x in elems}
        sums = []
        for a, b in itertools.combinations_with_replacement(elems, 2):
            s = self.oplus(a, b)
            if s is not None and s in pos:
                sums.append((pos[a], pos[b], pos[s]))
        return FiniteEffectAlgebra(names, sums, zero=str(self.zero), one=str(self.one),
                                   name=f"{self.kind}[{k}]")


class Omega(NamedTuple):
    """``ma`` (upper=False) or ``(ma)'`` (upper=True)."""

    upper: bool
    m: int

    def __str__(self):
        if not self.upper:
            return "0" if self.m == 0 else ("a" if self.m == 1 else f"{self.m}a")
        return "1" if self.m == 0 else ("a'" if self.m == 1 else f"({self.m}a)'")


class OmegaOmegaStar(SymbolicEffectAlgebra):
    """The chain 0 < a < 2a < ... < (2a)' < a' < 1 with its unique product."""

    kind = "OmegaOmegaStar"

    def __init__(self, default_window=DEFAULT_WINDOW):
        self.default_window = default_window
        self.zero = Omega(False, 0)
        self.one = Omega(True, 0)

    def __repr__(self):
        return "OmegaOmegaStar()"

    @staticmethod
    def low(m):
        return Omega(False, m)

    @staticmethod
    def up(m):
        return Omega(True, m)

    def contains(self, x):
        return isinstance(x, Omega) and x.m >= 0

    def window(self, k):
        return [Omega(False, m) for m in range(k + 1)] + [Omega(True, m) for m in range(k, -1, -1)]

    def oplus(self, x, y):
        if not x.upper and not y.upper:
            return Omega(False, x.m + y.m)
        if x.upper and y.upper:
            return None
        u, l = (x, y) if x.upper else (y, x)
        if l.m <= u.m:
            return Omega(True, u.m - l.m)
        return None

    def complement(self, x):
        return Omega(not x.upper, x.m)

    def product(self, x, y):
        if not x.upper and not y.upper:
            return self.zero
        if x.upper and y.upper:
            return Omega(True, x.m + y.m)
        # one lower, one upper: the meet is the lower one
        return y if x.upper else x

    def leq(self, x, y):
        if x.upper != y.upper:
            return not x.upper
        return x.m <= y.m if not x.upper else x.m >= y.m

    def down_set(self, b):
        if b.upper:
            raise ValueError(f"[0, {b}] is infinite")
        return [Omega(False, m) for m in range(b.m + 1)]


class LexExtension(SymbolicEffectAlgebra):
    """Pairs ``(a, g)`` over a finite base with integer offsets.

    Admitted pairs: ``a`` not in {0, 1} with any ``g``; ``(0, g)`` with
    ``g >= 0``; ``(1, g)`` with ``g <= 0``. Sums add componentwise and are
    defined only when the result is admitted.
    """

    kind = "LexExtension"

    def __init__(self, base: FiniteEffectAlgebra, default_window=DEFAULT_WINDOW):
        self.base = base
        self.default_window = default_window
        self.zero = (base.zero, 0)
        self.one = (base.one, 0)

    def __repr__(self):
        return f"LexExtension({self.base.name})"

    def contains(self, x):
        a, g = x
        if a not in self.base.index:
            return False
        if a == self.base.zero:
            return g >= 0
        if a == self.base.one:
            return g <= 0
        return True

    def window(self, k):
        out = []
        for a in self.base.elements:
            for g in range(-k, k + 1):
                if self.contains((a, g)):
                    out.append((a, g))
        return out

    def oplus(self, x, y):
        s = self.base.oplus(x[0], y[0])
        if s is None:
            return None
        z = (s, x[1] + y[1])
        return z if self.contains(z) else None

    def complement(self, x):
        return (self.base.complement(x[0]), -x[1])

    def embed(self, a):
        return (a, 0)


# ---------------------------------------------------------------- reports


@dataclass
class AxiomResult:
    name: str
    passed: bool
    witness: tuple | None = None
    note: str = ""

    def as_dict(self):
        return {"axiom": self.name, "passed": self.passed,
                "witness": None if self.witness is None else [str(w) for w in self.witness],
                "note": self.note}


@dataclass
class AxiomReport:
    algebra: str
    results: dict[str, AxiomResult]
    window: int | None = None

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    def failures(self) -> list[AxiomResult]:
        return [r for r in self.results.values() if not r.passed]

    def as_dict(self):
        return {"algebra": self.algebra, "window": self.window, "passed": self.passed,
                "axioms": [r.as_dict() for r in self.results.values()]}


@dataclass
class SeaReport(AxiomReport):
    commutative: bool = False

    def as_dict(self):
        d = super().as_dict()
        d["commutative"] = self.commutative
        return d


def _index_view(E: EffectAlgebra, window):
    """Carrier, sum function, zero and one, over indices for finite algebras."""
    if isinstance(E, FiniteEffectAlgebra):
        rows = E._rows

        def plus(i, j):
            k = rows[i][j]
            return None if k < 0 else k

        return list(range(E.n)), plus, E.index[E.zero], E.index[E.one], E.elements.__getitem__
    return E.carrier(window), E.oplus, E.zero, E.one, (lambda x: x)


def check_effect_axioms(E: EffectAlgebra, window: int | None = None) -> AxiomReport:
    """Check (A1)-(A4) exhaustively on the carrier (or window).

    Each failing axiom carries the first witness tuple found in carrier
    order.
    """
    if not isinstance(E, FiniteEffectAlgebra):
        window = E.default_window if window is None else window
    carrier, plus, zero, one, name = _index_view(E, window)
    results = {}

    def res(key, witness=None, note=""):
        results[key] = AxiomResult(key, witness is None,
                                   None if witness is None else tuple(name(w) for w in witness), note)

    results["nontrivial"] = AxiomResult("nontrivial", zero != one)

    w = None
    for a, b in itertools.product(carrier, repeat=2):
        if plus(a, b) != plus(b, a):
            w = (a, b)
            break
    res("A1", w)

    w = None
    for a, b in itertools.product(carrier, repeat=2):
        ab = plus(a, b)
        if ab is None:
            continue
        for c in carrier:
            abc = plus(ab, c)
            if abc is None:
                continue
            bc = plus(b, c)
            if bc is None or plus(a, bc) != abc:
                w = (a, b, c)
                break
        if w:
            break
    res("A2", w)

    w = None
    note = ""
    for a in carrier:
        hits = [x for x in carrier if plus(a, x) == one]
        if len(hits) != 1:
            w = (a,)
            note = f"{len(hits)} complements"
            break
    res("A3", w, note)

    w = None
    for a in carrier:
        if a != zero and plus(a, one) is not None:
            w = (a,)
            break
    res("A4", w)
    label = getattr(E, "name", None) or repr(E)
    return AxiomReport(label, results, None if isinstance(E, FiniteEffectAlgebra) else window)


def verified(E: FiniteEffectAlgebra) -> FiniteEffectAlgebra:
    """Return ``E`` or raise :class:`AxiomFailure` with the first witness."""
    rep = check_effect_axioms(E)
    if not rep.passed:
        f = rep.failures()[0]
        raise AxiomFailure(f"{E.name}: {f.name} fails at {f.witness}")
    return E


# ---------------------------------------------------------------- order


class OrderRelation:
    """The order ``a <= b`` iff ``a + c = b`` for some ``c``, on a carrier."""

    def __init__(self, carrier: list, leq: list[list[bool]], diff: dict, zero, one):
        self.carrier = list(carrier)
        self.pos = {x: i for i, x in enumerate(self.carrier)}
        self._leq = leq
        self._diff = diff
        self.zero = zero
        self.one = one

    def leq(self, a, b) -> bool:
        return self._leq[self.pos[a]][self.pos[b]]

    def lt(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    def minus(self, b, a):
        """``b - a``: the unique ``c`` with ``a + c = b``."""
        try:
            return self._diff[(b, a)]
        except KeyError:
            raise ValueError(f"{a} is not below {b}") from None

    def lower_bounds(self, a) -> list:
        return [x for x in self.carrier if self.leq(x, a)]

    def upper_bounds(self, a) -> list:
        return [x for x in self.carrier if self.leq(a, x)]

    def common_lower_bounds(self, a, b) -> list:
        return [x for x in self.carrier if self.leq(x, a) and self.leq(x, b)]

    def meet(self, a, b):
        """Unique maximal common lower bound, or ``None`` when there is none."""
        lbs = self.common_lower_bounds(a, b)
        maximal = [x for x in lbs if not any(self.lt(x, y) for y in lbs)]
        return maximal[0] if len(maximal) == 1 else None

    def pairs(self) -> list[tuple]:
        return [(a, b) for a in self.carrier for b in self.carrier if self.leq(a, b)]

    def is_partial_order(self) -> bool:
        c = self.carrier
        for a in c:
            if not self.leq(a, a):
                return False
        for a, b in itertools.product(c, repeat=2):
            if a != b and self.leq(a, b) and self.leq(b, a):
                return False
        for a, b, d in itertools.product(c, repeat=3):
            if self.leq(a, b) and self.leq(b, d) and not self.leq(a, d):
                return False
        return True


def derive_order(E: EffectAlgebra, window: int | None = None) -> OrderRelation:
    """Full order relation on the carrier by exhaustive witness search."""
    if isinstance(E, FiniteEffectAlgebra):
        n = E.n
        leq = [[False] * n for _ in range(n)]
        diff = {}
        for i in range(n):
            for c, k in enumerate(E._rows[i]):
                if k >= 0:
                    leq[i][k] = True
                    diff.setdefault((E.elements[k], E.elements[i]), E.elements[c])
        carrier = list(E.elements)
        return OrderRelation(carrier, leq, diff, E.zero, E.one)
    window = E.default_window if window is None else window
    carrier = E.carrier(window)
    pool = E.witness_pool(window)
    pos = {x: i for i, x in enumerate(carrier)}
    leq = [[False] * len(carrier) for _ in carrier]
    diff = {}
    for a in carrier:
        for c in pool:
            s = E.oplus(a, c)
            if s is not None and s in pos:
                leq[pos[a]][pos[s]] = True
                diff.setdefault((s, a), c)
    return OrderRelation(carrier, leq, diff, E.zero, E.one)


@dataclass
class SharpInfo:
    elements: list
    orthoalgebra: bool

    def __contains__(self, x):
        return x in self.elements


def sharp_elements(E: EffectAlgebra, order: OrderRelation | None = None,
                   window: int | None = None) -> SharpInfo:
    """Elements whose only common lower bound with their complement is 0."""
    order = order or derive_order(E, window)
    sharp = []
    for a in order.carrier:
        lbs = order.common_lower_bounds(a, E.complement(a))
        if lbs == [E.zero]:
            sharp.append(a)
    ortho = all(a == E.zero or E.oplus(a, a) is None for a in order.carrier)
    return SharpInfo(sharp, ortho)


# ---------------------------------------------------------------- products


class ProductTable:
    """A total binary operation on a finite carrier, stored by index."""

    def __init__(self, algebra: FiniteEffectAlgebra, values):
        arr = np.asarray(values, dtype=np.int64).reshape(algebra.n, algebra.n)
        if arr.min() < 0 or arr.max() >= algebra.n:
            raise StructureError("product entry outside the carrier")
        arr.setflags(write=False)
        self.algebra = algebra
        self.values = arr
        self._rows = arr.tolist()

    @classmethod
    def from_function(cls, algebra, f: Callable):
        idx = algebra.index
        return cls(algebra, [[idx[f(a, b)] for b in algebra.elements] for a in algebra.elements])

    @classmethod
    def from_entries(cls, algebra, entries: Iterable):
        n = algebra.n
        vals = [[-1] * n for _ in range(n)]
        idx = algebra.index
        for a, b, c in entries:
            vals[idx[a]][idx[b]] = idx[c]
        missing = [(algebra.elements[i], algebra.elements[j])
                   for i in range(n) for j in range(n) if vals[i][j] < 0]
        if missing:
            raise StructureError(f"product undefined at {missing[0]}")
        return cls(algebra, vals)

    def __call__(self, a, b):
        idx = self.algebra.index
        return self.algebra.elements[self._rows[idx[a]][idx[b]]]

    def flat(self) -> tuple[int, ...]:
        return tuple(self.values.ravel().tolist())

    def entries(self) -> list[tuple[str, str, str]]:
        el = self.algebra.elements
        return [(el[i], el[j], el[self._rows[i][j]])
                for i in range(self.algebra.n) for j in range(self.algebra.n)]

    def __eq__(self, other):
        if not isinstance(other, ProductTable):
            return NotImplemented
        return (self.algebra.elements == other.algebra.elements
                and np.array_equal(self.values, other.values))

    def __hash__(self):
        return hash(self.flat())

    def __repr__(self):
        return f"ProductTable({self.algebra.name})"


def sea_violations(carrier, plus, comp, prod, one, zero, eq=None) -> tuple[dict, bool]:
    """First witness for each of S1-S5 over all tuples of ``carrier``.

    Returns ``({rule: witness-or-None}, commutative)``.
    """
    eq = eq or (lambda x, y: x == y)
    cache = {}

    def p(a, b):
        key = (a, b)
        if key not in cache:
            cache[key] = prod(a, b)
        return cache[key]

    def commute(a, b):
        return eq(p(a, b), p(b, a))

    out = {r: None for r in ("S1", "S2", "S3", "S4", "S5")}
    for a in carrier:
        for b, c in itertools.product(carrier, repeat=2):
            bc = plus(b, c)
            if bc is None:
                continue
            s = plus(p(a, b), p(a, c))
            if s is None or not eq(s, p(a, bc)):
                out["S1"] = (a, b, c)
                break
        if out["S1"]:
            break
    for a in carrier:
        if not eq(p(one, a), a):
            out["S2"] = (a,)
            break
    for a, b in itertools.product(carrier, repeat=2):
        if eq(p(a, b), zero) and not commute(a, b):
            out["S3"] = (a, b)
            break
    comm = {(a, b): commute(a, b) for a in carrier for b in carrier}
    for a, b in itertools.product(carrier, repeat=2):
        if not comm[(a, b)]:
            continue
        if not commute(a, comp(b)):
            out["S4"] = (a, b)
            break
        ab = p(a, b)
        bad = next((c for c in carrier if not eq(p(a, p(b, c)), p(ab, c))), None)
        if bad is not None:
            out["S4"] = (a, b, bad)
            break
    for c in carrier:
        ks = [a for a in carrier if comm[(c, a)]]
        for a, b in itertools.product(ks, repeat=2):
            if not commute(c, p(a, b)):
                out["S5"] = (c, a, b)
                break
            s = plus(a, b)
            if s is not None and not commute(c, s):
                out["S5"] = (c, a, b)
                break
        if out["S5"]:
            break
    commutative = all(comm.values())
    return out, commutative


def check_sea_axioms(E: EffectAlgebra, t, window: int | None = None) -> SeaReport:
    """Check (S1)-(S5) for product ``t`` on the carrier (or window).

    ``t`` is a :class:`ProductTable` for finite algebras, or any callable
    ``t(a, b)``. For symbolic algebras the window is reported with the result.
    """
    if isinstance(E, FiniteEffectAlgebra):
        carrier, plus, zero, one, name = _index_view(E, None)
        comp = E.complement_indices()
        if isinstance(t, ProductTable):
            rows = t._rows
            prod = lambda i, j: rows[i][j]  # noqa: E731
        else:
            idx, el = E.index, E.elements
            prod = lambda i, j: idx[t(el[i], el[j])]  # noqa: E731
        found, commutative = sea_violations(carrier, plus, comp.__getitem__, prod, one, zero)
        win = None
    else:
        win = E.default_window if window is None else window
        name = lambda x: x  # noqa: E731
        found, commutative = sea_violations(E.carrier(win), E.oplus, E.complement, t,
                                            E.one, E.zero)
    results = {r: AxiomResult(r, w is None, None if w is None else tuple(name(x) for x in w))
               for r, w in found.items()}
    label = getattr(E, "name", None) or repr(E)
    return SeaReport(label, results, win, commutative=commutative)


def coexistence_witness(E: FiniteEffectAlgebra, a, b, order: OrderRelation | None = None):
    """A triple ``(c, d, e)`` with ``c+d+e`` defined, ``a = c+d``, ``b = c+e``.

    ``d`` and ``e`` are forced by cancellation once ``c`` is fixed, so the
    search runs over common lower bounds ``c`` in carrier order.
    """
    order = order or derive_order(E)
    for c in order.common_lower_bounds(a, b):
        d = order.minus(a, c)
        e = order.minus(b, c)
        if E.oplus(a, e) is not None:
            return (c, d, e)
    return None


# ---------------------------------------------------------------- sampled checks


@dataclass
class QuotientWitness:
    """``a = b . c`` with ``c <= hat(b)``; ``c`` is ``None`` when no factor exists."""

    a: Any
    b: Any
    c: Any = None
    unique: bool | None = None
    residuals: dict = field(default_factory=dict)
    reason: str = ""

    @property
    def exists(self) -> bool:
        return self.c is not None


def check_sea_samples(model, s1=(), s2=(), s3=(), s4=(), s5=()) -> dict:
    """Sample-based (S1)-(S5) for numeric or exact models.

    ``model`` provides ``oplus``, ``complement``, ``product``, ``one``,
    ``zero`` and ``dist``; equality means ``dist <= model.tol``. Tuples:
    ``s1`` ``(a, b, c)`` with ``b + c`` defined, ``s2`` elements, ``s3``
    pairs, ``s4`` ``(a, b, c)`` and ``s5`` ``(c, a, b)``. Conditional rules
    count how many sampled tuples met their hypothesis.
    """
    tol = model.tol
    prod, plus, dist = model.product, model.oplus, model.dist

    def commute_gap(a, b):
        return dist(prod(a, b), prod(b, a))

    out = {}

    def record(rule, checked, applicable, residuals, first):
        worst = max(residuals) if residuals else 0.0
        out[rule] = {"checked": checked, "applicable": applicable,
                     "max_residual": float(worst), "first_failure": first,
                     "passed": first is None}

    res, first, n = [], None, 0
    for i, (a, b, c) in enumerate(s1):
        n += 1
        bc = plus(b, c)
        lhs = prod(a, bc) if bc is not None else None
        s = plus(prod(a, b), prod(a, c))
        r = float("inf") if (s is None or lhs is None) else dist(s, lhs)
        res.append(r)
        if r > tol and first is None:
            first = i
    record("S1", n, n, res, first)

    res, first, n = [], None, 0
    for i, a in enumerate(s2):
        n += 1
        r = dist(prod(model.one, a), a)
        res.append(r)
        if r > tol and first is None:
            first = i
    record("S2", n, n, res, first)

    res, first, n, k = [], None, 0, 0
    for i, (a, b) in enumerate(s3):
        n += 1
        if dist(prod(a, b), model.zero) > tol:
            continue
        k += 1
        r = commute_gap(a, b)
        res.append(r)
        if r > tol and first is None:
            first = i
    record("S3", n, k, res, first)

    res, first, n, k = [], None, 0, 0
    for i, (a, b, c) in enumerate(s4):
        n += 1
        if commute_gap(a, b) > tol:
            continue
        k += 1
        r = max(commute_gap(a, model.complement(b)),
                dist(prod(a, prod(b, c)), prod(prod(a, b), c)))
        res.append(r)
        if r > tol and first is None:
            first = i
    record("S4", n, k, res, first)

    res, first, n, k = [], None, 0, 0
    for i, (c, a, b) in enumerate(s5):
        n += 1
        if commute_gap(c, a) > tol or commute_gap(c, b) > tol:
            continue
        k += 1
        r = commute_gap(c, prod(a, b))
        s = plus(a, b)
        if s is not None:
            r = max(r, commute_gap(c, s))
        res.append(r)
        if r > tol and first is None:
            first = i
    record("S5", n, k, res, first)
    return out
