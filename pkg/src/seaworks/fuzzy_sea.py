"""Exact fuzzy set systems [0,1]^X and the scalar unit interval.

Values are :class:`fractions.Fraction`; sums, products, supports and
quotients are exact, so every check in this module is decided without a
tolerance. The polynomial system on [0, 1] (used as a negative exhibit for
the factorisation condition) needs exact sign decisions for polynomials,
which come from sympy's real-root isolation.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import sympy as sp

from .ea_core import QuotientWitness, check_sea_samples

ZERO = Fraction(0)
ONE = Fraction(1)
MAX_DENOMINATOR = 64


class NotBelow(ValueError):
    """Quotient requested for ``f`` not below ``g``."""


def as_fraction(v) -> Fraction:
    """Exact rational from int, Fraction or a ``p/q`` string; floats are refused."""
    if isinstance(v, bool) or isinstance(v, float):
        raise TypeError(f"exact rational expected, got {v!r}")
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v.strip())
    if isinstance(v, sp.Rational):
        return Fraction(int(v.p), int(v.q))
    raise TypeError(f"exact rational expected, got {v!r}")


@dataclass(frozen=True)
class FuzzyElement:
    """A map from the ordered base set to rationals in [0, 1]."""

    base: tuple
    values: tuple

    def __post_init__(self):
        if len(self.base) != len(self.values):
            raise ValueError("one value per base point")
        vals = tuple(as_fraction(v) for v in self.values)
        for x, v in zip(self.base, vals):
            if not ZERO <= v <= ONE:
                raise ValueError(f"value {v} at {x} outside [0, 1]")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_map(cls, base, mapping: dict):
        return cls(tuple(base), tuple(mapping.get(x, 0) for x in base))

    @classmethod
    def constant(cls, base, r):
        return cls(tuple(base), (r,) * len(base))

    def __getitem__(self, x):
        return self.values[self.base.index(x)]

    def support(self) -> tuple:
        return tuple(x for x, v in zip(self.base, self.values) if v != 0)

    def is_sharp(self) -> bool:
        return all(v in (ZERO, ONE) for v in self.values)

    def __str__(self):
        return format_element(self)


def unit_scalar(r) -> FuzzyElement:
    """An element of [0, 1], viewed as a fuzzy set on one point."""
    return FuzzyElement(("t",), (r,))


def format_element(f: FuzzyElement) -> str:
    return ",".join(f"{x}={v}" for x, v in zip(f.base, f.values))


def parse_element(text: str, base: Sequence[str] | None = None) -> FuzzyElement:
    """Read ``x=p/q`` pairs separated by commas or spaces.

    With ``base`` given, points not mentioned are 0; otherwise the base is
    the listed points in order.
    """
    pairs = {}
    order = []
    for tok in text.replace(",", " ").split():
        if "=" not in tok:
            raise ValueError(f"expected x=p/q, got {tok!r}")
        x, v = tok.split("=", 1)
        if x in pairs:
            raise ValueError(f"point {x!r} given twice")
        pairs[x] = as_fraction(v)
        order.append(x)
    if base is None:
        return FuzzyElement(tuple(order), tuple(pairs[x] for x in order))
    unknown = set(pairs) - set(base)
    if unknown:
        raise ValueError(f"points {sorted(unknown)} not in base {list(base)}")
    return FuzzyElement.from_map(base, pairs)


def _same_base(f, g):
    if f.base != g.base:
        raise ValueError(f"base mismatch: {f.base} vs {g.base}")


def fuzzy_oplus(f, g) -> FuzzyElement | None:
    _same_base(f, g)
    s = tuple(a + b for a, b in zip(f.values, g.values))
    return None if any(v > ONE for v in s) else FuzzyElement(f.base, s)


def fuzzy_complement(f) -> FuzzyElement:
    return FuzzyElement(f.base, tuple(ONE - v for v in f.values))


def fuzzy_product(f, g) -> FuzzyElement:
    """Pointwise product."""
    _same_base(f, g)
    return FuzzyElement(f.base, tuple(a * b for a, b in zip(f.values, g.values)))


def fuzzy_hat(f) -> FuzzyElement:
    """Characteristic function of the support: the least sharp element above ``f``."""
    return FuzzyElement(f.base, tuple(ONE if v else ZERO for v in f.values))


def fuzzy_leq(f, g) -> bool:
    _same_base(f, g)
    return all(a <= b for a, b in zip(f.values, g.values))


def fuzzy_quotient(f, g) -> FuzzyElement:
    """``f / g``: pointwise division on the support of ``g``, 0 elsewhere."""
    _same_base(f, g)
    if not fuzzy_leq(f, g):
        x = next(x for x, a, b in zip(f.base, f.values, g.values) if a > b)
        raise NotBelow(f"f is not below g at {x}")
    return FuzzyElement(f.base, tuple(a / b if b else ZERO for a, b in zip(f.values, g.values)))


def unmasked_division(f, g) -> FuzzyElement:
    """Pointwise ``f/g`` with ``0/0`` read as 1: the support is not masked."""
    _same_base(f, g)
    if not fuzzy_leq(f, g):
        raise NotBelow("f is not below g")
    return FuzzyElement(f.base, tuple(a / b if b else ONE for a, b in zip(f.values, g.values)))


def random_fraction(rng: random.Random, max_den=MAX_DENOMINATOR) -> Fraction:
    q = rng.randint(1, max_den)
    return Fraction(rng.randint(0, q), q)


class FullFuzzy:
    """The full system [0,1]^X on a finite ordered base ``X``."""

    tol = 0

    def __init__(self, base: Sequence[str]):
        base = tuple(str(x) for x in base)
        if not base or len(set(base)) != len(base):
            raise ValueError("base must be a non-empty list of distinct points")
        self.base = base
        self.zero = FuzzyElement.constant(base, 0)
        self.one = FuzzyElement.constant(base, 1)

    def __repr__(self):
        return f"FullFuzzy({list(self.base)})"

    def element(self, values) -> FuzzyElement:
        if isinstance(values, dict):
            return FuzzyElement.from_map(self.base, values)
        if isinstance(values, str):
            return parse_element(values, self.base)
        return FuzzyElement(self.base, tuple(values))

    def marker(self, j: int) -> FuzzyElement:
        """Indicator of the ``j``-th point."""
        return FuzzyElement(self.base, tuple(ONE if i == j else ZERO for i in range(len(self.base))))

    def oplus(self, f, g):
        return fuzzy_oplus(f, g)

    def complement(self, f):
        return fuzzy_complement(f)

    def product(self, f, g):
        return fuzzy_product(f, g)

    def hat(self, f):
        return fuzzy_hat(f)

    def leq(self, f, g):
        return fuzzy_leq(f, g)

    def is_sharp(self, f):
        return f.is_sharp()

    def dist(self, f, g):
        return 0 if f == g else 1

    def quotient(self, f, g):
        try:
            return QuotientWitness(f, g, fuzzy_quotient(f, g), unique=True)
        except NotBelow as exc:
            return QuotientWitness(f, g, None, reason=str(exc))

    def sample(self, rng: random.Random, zeros=True) -> FuzzyElement:
        vals = []
        for _ in self.base:
            r = rng.random()
            if zeros and r < 0.15:
                vals.append(ZERO)
            elif zeros and r < 0.25:
                vals.append(ONE)
            else:
                vals.append(random_fraction(rng))
        return FuzzyElement(self.base, tuple(vals))

    def sample_below(self, g, rng) -> FuzzyElement:
        return FuzzyElement(self.base, tuple(random_fraction(rng) * v for v in g.values))

    def carrier(self, window=None):
        raise TypeError("[0,1]^X is infinite; draw samples instead")


def sea_samples(model: FullFuzzy, n: int, rng: random.Random) -> dict:
    s1, s2, s3, s4, s5 = [], [], [], [], []
    for _ in range(n):
        a, b = model.sample(rng), model.sample(rng)
        c = model.sample_below(model.complement(b), rng)
        s1.append((a, b, c))
        s2.append(a)
        s3.append((a, b if rng.random() < 0.5 else model.sample_below(model.complement(model.hat(a)), rng)))
        s4.append((a, b, model.sample(rng)))
        s5.append((model.sample(rng), b, c))
    return {"s1": s1, "s2": s2, "s3": s3, "s4": s4, "s5": s5}


def axioms_suite(n_points=3, samples=1000, seed=0) -> dict:
    """Exact (S1)-(S5) on sampled triples; every pair commutes, so S4 covers
    associativity on all of them."""
    model = FullFuzzy([f"x{i}" for i in range(n_points)])
    rng = random.Random(seed)
    rules = check_sea_samples(model, **sea_samples(model, samples, rng))
    return {"suite": "axioms", "base": list(model.base), "samples": samples, "seed": seed,
            "rules": rules, "passed": all(r["passed"] for r in rules.values())}


# ---------------------------------------------------------------- uniqueness probes


def _default_scalars(n=6):
    return sorted({Fraction(p, q) for q in range(1, n + 1) for p in range(q + 1)})


def rational_uniqueness_probe(t: Callable, n_max=12, samples=None) -> dict:
    """Compare a candidate scalar product with the values additivity forces.

    Splitting 1 into ``n`` equal parts, ``a = a.1 = n (a.(1/n))`` by the unit
    law and additivity, so ``a.(m/n) = m a / n`` for every product. ``t`` is
    called on Fractions.
    """
    samples = _default_scalars() if samples is None else [as_fraction(a) for a in samples]
    failures = []
    checked = 0
    for a in samples:
        for n in range(1, n_max + 1):
            part = a / n
            for m in range(1, n + 1):
                if Fraction(m, n).denominator != n:
                    continue
                r = Fraction(m, n)
                checked += 1
                got = as_fraction(t(a, r))
                forced = m * part
                if got != forced:
                    failures.append({"a": a, "r": r, "candidate": got, "forced": forced})
    return {"n_max": n_max, "checked": checked, "failures": failures,
            "passed": not failures}


def probe_fails_at(report, a, r) -> bool:
    a, r = as_fraction(a), as_fraction(r)
    return any(f["a"] == a and f["r"] == r for f in report["failures"])


def coordinatewise_probe(model: FullFuzzy, t: Callable, n_max=8, pairs=50, seed=0) -> dict:
    """Uniqueness on [0,1]^X through the point markers.

    For each point ``x_j`` the candidate is restricted to the copy of [0, 1]
    below the marker ``f_j`` and handed to :func:`rational_uniqueness_probe`;
    then ``t(f, g)`` is compared point by point with the restricted scalar
    products on sampled pairs (locality through the markers).
    """
    per_point = []
    for j, x in enumerate(model.base):
        fj = model.marker(j)

        def scalar(a, r, fj=fj, j=j):
            return t(FuzzyElement(model.base, tuple(a * v for v in fj.values)),
                     FuzzyElement(model.base, tuple(r * v for v in fj.values))).values[j]

        rep = rational_uniqueness_probe(scalar, n_max)
        per_point.append({"point": x, "passed": rep["passed"],
                          "failures": rep["failures"][:3], "checked": rep["checked"]})
    rng = random.Random(seed)
    local = []
    for _ in range(pairs):
        f, g = model.sample(rng), model.sample(rng)
        h = t(f, g)
        for j in range(len(model.base)):
            fj = model.marker(j)
            cut = t(FuzzyElement(model.base, tuple(f.values[j] * v for v in fj.values)),
                    FuzzyElement(model.base, tuple(g.values[j] * v for v in fj.values)))
            if h.values[j] != cut.values[j]:
                local.append({"f": str(f), "g": str(g), "point": model.base[j]})
    agrees = []
    rng = random.Random(seed + 1)
    for _ in range(pairs):
        f, g = model.sample(rng), model.sample(rng)
        agrees.append(t(f, g) == fuzzy_product(f, g))
    return {"base": list(model.base), "points": per_point, "locality_failures": local[:5],
            "agrees_with_pointwise": all(agrees),
            "passed": all(p["passed"] for p in per_point) and not local,
            "note": "finite base only"}


# ---------------------------------------------------------------- polynomial system

X = sp.Symbol("x")


def poly(expr) -> sp.Poly:
    if isinstance(expr, sp.Poly):
        return expr
    return sp.Poly(sp.sympify(expr), X, domain="QQ")


def _frac(v) -> Fraction:
    v = sp.Rational(v)
    return Fraction(int(v.p), int(v.q))


def nonnegative_on_unit(p: sp.Poly) -> bool:
    """Exact decision of ``p(x) >= 0`` for all ``x`` in [0, 1].

    Between consecutive real roots the sign is constant, so it suffices to
    test 0, 1 and one point in each gap between isolating intervals.
    """
    if not isinstance(p, sp.Poly):
        p = poly(p)
    if p.is_zero:
        return True
    q = p.sqf_part()
    eps = sp.Rational(1, 2 ** 10)
    while True:
        ivs = [iv for iv, _ in q.intervals(inf=0, sup=1, eps=eps)]
        if all(ivs[i][1] < ivs[i + 1][0] for i in range(len(ivs) - 1)):
            break
        eps /= 2 ** 10
    points = [sp.Integer(0), sp.Integer(1)]
    for (lo, hi), (lo2, _) in zip(ivs, ivs[1:]):
        points.append((hi + lo2) / 2)
    for lo, hi in ivs:
        points += [lo, hi]
    return all(p.eval(pt) >= 0 for pt in points if 0 <= pt <= 1)


def poly_leq(p, q) -> bool:
    return nonnegative_on_unit(poly(q) - poly(p))


def is_unit_valued(p) -> bool:
    return nonnegative_on_unit(p) and nonnegative_on_unit(poly(1) - p)


def random_poly(rng: random.Random, max_degree=3) -> sp.Poly:
    """Bernstein combination with [0,1] coefficients, hence [0,1]-valued."""
    d = rng.randint(0, max_degree)
    expr = 0
    for k in range(d + 1):
        c = sp.Rational(rng.randint(0, 8), 8)
        expr += c * sp.binomial(d, k) * X ** k * (1 - X) ** (d - k)
    return poly(expr)


def interpolate(nodes, values) -> sp.Poly:
    """Lagrange interpolant through rational nodes, exactly."""
    return poly(sp.interpolate(list(zip(nodes, values)), X)) if len(nodes) > 1 \
        else poly(values[0])


def polynomial_counterexample(max_degree=6, grid=64) -> dict:
    """``f = x/2 <= g = 1/2 + x/2`` but ``f = g.h`` forces ``h = x/(x+1)``.

    The order is checked on ``grid`` points ``k/(grid-1)`` and exactly. For
    each degree ``d`` the interpolant of ``h`` through ``d + 1`` nodes
    ``j/d`` (just ``0`` when ``d = 0``) is evaluated at ``1/(2d)`` (``1/2``
    for ``d = 0``) and must disagree with ``h``; a non-zero remainder of
    ``f`` divided by ``g`` shows no polynomial ``h`` exists at all.
    """
    f = poly(X / 2)
    g = poly(sp.Rational(1, 2) + X / 2)

    def h(x):
        return x / (x + 1)

    pts = [Fraction(k, grid - 1) for k in range(grid)]
    grid_ok = all(_frac(f.eval(sp.Rational(p.numerator, p.denominator)))
                  <= _frac(g.eval(sp.Rational(p.numerator, p.denominator))) for p in pts)
    degrees = []
    for d in range(max_degree + 1):
        nodes = [Fraction(0)] if d == 0 else [Fraction(j, d) for j in range(d + 1)]
        held = Fraction(1, 2) if d == 0 else Fraction(1, 2 * d)
        ip = interpolate([sp.Rational(n.numerator, n.denominator) for n in nodes],
                         [sp.Rational(h(n).numerator, h(n).denominator) for n in nodes])
        val = _frac(ip.eval(sp.Rational(held.numerator, held.denominator)))
        degrees.append({"degree": d, "nodes": [str(n) for n in nodes], "held_out": str(held),
                        "interpolant": str(ip.as_expr()), "interpolant_value": str(val),
                        "h_value": str(h(held)), "differs": val != h(held)})
    _, rem = sp.div(f, g)
    return {
        "f": str(f.as_expr()), "g": str(g.as_expr()), "h": "x/(x + 1)",
        "grid_points": grid, "f_leq_g_on_grid": grid_ok,
        "f_leq_g_exact": poly_leq(f, g),
        "h_at_1": str(h(Fraction(1))),
        "degrees": degrees,
        "division_remainder": str(rem.as_expr()),
        "passed": grid_ok and all(r["differs"] for r in degrees) and not rem.is_zero,
    }


class PolynomialFuzzy:
    """[0,1]-valued polynomials on [0, 1] with rational coefficients.

    Sharp elements are only 0 and 1, so the hat of any non-zero element is
    1. Quotients exist only when exact division leaves a polynomial.
    """

    tol = 0

    def __init__(self):
        self.zero = poly(0)
        self.one = poly(1)

    def __repr__(self):
        return "PolynomialFuzzy()"

    def oplus(self, p, q):
        s = p + q
        return s if poly_leq(s, self.one) else None

    def complement(self, p):
        return self.one - p

    def product(self, p, q):
        return p * q

    def hat(self, p):
        return self.zero if p.is_zero else self.one

    def leq(self, p, q):
        return poly_leq(p, q)

    def is_sharp(self, p):
        return p == self.zero or p == self.one

    def dist(self, p, q):
        return 0 if p == q else 1

    def quotient(self, a, b):
        if not self.leq(a, b):
            return QuotientWitness(a, b, None, reason="a is not below b")
        if a.is_zero:
            return QuotientWitness(a, b, self.zero, unique=True)
        c, rem = sp.div(a, b)
        if not rem.is_zero or not is_unit_valued(c):
            return QuotientWitness(a, b, None, reason="no polynomial factor")
        return QuotientWitness(a, b, c, unique=True)

    def sample(self, rng):
        return random_poly(rng)


def polynomial_condition2(samples=60, seed=0) -> dict:
    """Exact check of ``h f <= h g  =>  hat(h) f <= hat(h) g`` on random
    polynomials; triples failing the hypothesis are skipped."""
    model = PolynomialFuzzy()
    rng = random.Random(seed)
    kept, fails = 0, []
    for i in range(samples):
        h, f, g = random_poly(rng), random_poly(rng), random_poly(rng)
        if i % 2:
            f = g * poly(sp.Rational(rng.randint(0, 8), 8))
        if not model.leq(h * f, h * g):
            continue
        kept += 1
        hh = model.hat(h)
        if not model.leq(hh * f, hh * g):
            fails.append({"h": str(h.as_expr()), "f": str(f.as_expr()), "g": str(g.as_expr())})
    return {"sampled": samples, "applicable": kept, "counterexamples": fails,
            "passed": not fails and kept > 0}
