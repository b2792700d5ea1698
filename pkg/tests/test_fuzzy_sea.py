import random
from fractions import Fraction as F

import pytest
import sympy as sp

from seaworks import fuzzy_sea as fz
from seaworks.fuzzy_sea import FullFuzzy, FuzzyElement, NotBelow


def el(**kw):
    base = tuple(sorted(kw))
    return FuzzyElement(base, tuple(F(kw[k]) for k in base))


def test_floats_refused():
    with pytest.raises(TypeError):
        fz.as_fraction(0.5)


def test_values_must_lie_in_unit_interval():
    with pytest.raises(ValueError):
        el(p="3/2")


def test_parse_format_round_trip():
    f = fz.parse_element("p=1/4,q=0")
    assert fz.format_element(f) == "p=1/4,q=0"
    assert fz.parse_element(fz.format_element(f)) == f


def test_product_and_oplus():
    f, g = el(p="1/2", q="1/3"), el(p="1/2", q="3/4")
    assert fz.fuzzy_product(f, g) == el(p="1/4", q="1/4")
    assert fz.fuzzy_oplus(f, g) is None
    assert fz.fuzzy_oplus(el(p="1/4", q="0"), el(p="1/2", q="1")) == el(p="3/4", q="1")


def test_hat_is_support_indicator():
    assert fz.fuzzy_hat(el(p="1/4", q="0")) == el(p=1, q=0)


def test_quotient_masks_support():
    # (1/4, 0) / (1/2, 1/3) = (1/2, 0)
    q = fz.fuzzy_quotient(el(p="1/4", q="0"), el(p="1/2", q="1/3"))
    assert q == el(p="1/2", q="0")


def test_quotient_zero_denominator_coordinate():
    q = fz.fuzzy_quotient(el(p="0", q="0"), el(p="1/2", q="0"))
    assert q == el(p=0, q=0)


def test_quotient_requires_order():
    with pytest.raises(NotBelow):
        fz.fuzzy_quotient(el(p="3/4"), el(p="1/2"))


def test_unmasked_division_differs_off_support():
    u = fz.unmasked_division(el(p="0", q="0"), el(p="1/2", q="0"))
    assert u == el(p=0, q=1)


def test_scalar_complement_quotient():
    # (b - a)/b = hat(b).(a/b)' for a = 1/4, b = 1/2
    a, b = fz.unit_scalar(F(1, 4)), fz.unit_scalar(F(1, 2))
    lhs = fz.fuzzy_quotient(fz.unit_scalar(F(1, 4)), b)
    rhs = fz.fuzzy_product(fz.fuzzy_hat(b), fz.fuzzy_complement(fz.fuzzy_quotient(a, b)))
    assert lhs == rhs == fz.unit_scalar(F(1, 2))


def test_model_sampling_is_exact_and_seeded():
    M = FullFuzzy(("p", "q"))
    a = [M.sample(random.Random(3)) for _ in range(5)]
    b = [M.sample(random.Random(3)) for _ in range(5)]
    assert a == b
    assert all(isinstance(v, F) for x in a for v in x.values)


def test_sample_below():
    M = FullFuzzy(("p", "q", "r"))
    r = random.Random(1)
    for _ in range(50):
        g = M.sample(r)
        assert M.leq(M.sample_below(g, r), g)


def test_axioms_exact():
    rep = fz.axioms_suite(3, 300, seed=2)
    assert rep["passed"]
    assert all(v["max_residual"] == 0 for v in rep["rules"].values())


def test_probe_accepts_multiplication():
    assert fz.rational_uniqueness_probe(lambda a, b: a * b, 8)["passed"]


def test_probe_rejects_min_at_half():
    rep = fz.rational_uniqueness_probe(min, 8)
    assert not rep["passed"]
    assert fz.probe_fails_at(rep, F(1, 2), F(1, 2))


def test_coordinatewise_probe():
    M = FullFuzzy(("p", "q"))
    pointwise_min = lambda f, g: FuzzyElement(f.base, tuple(map(min, f.values, g.values)))  # noqa: E731
    assert fz.coordinatewise_probe(M, fz.fuzzy_product, 6, 20)["passed"]
    assert not fz.coordinatewise_probe(M, pointwise_min, 6, 20)["passed"]


def test_nonnegative_on_unit():
    x = fz.X
    assert fz.nonnegative_on_unit(fz.poly(x * (1 - x)))
    assert fz.nonnegative_on_unit(fz.poly((x - sp.Rational(1, 2)) ** 2))
    assert not fz.nonnegative_on_unit(fz.poly(x - sp.Rational(1, 3)))
    assert not fz.nonnegative_on_unit(fz.poly(-x ** 3))


def test_polynomial_order_pair():
    x = fz.X
    assert fz.poly_leq(x / 2, x / 2 + sp.Rational(1, 2))
    assert not fz.poly_leq(x, sp.Rational(1, 2))


def test_polynomial_counterexample():
    rep = fz.polynomial_counterexample(6)
    assert rep["passed"]
    assert rep["f_leq_g_on_grid"] and rep["f_leq_g_exact"]
    assert [d["degree"] for d in rep["degrees"]] == list(range(7))
    assert all(d["differs"] for d in rep["degrees"])
    assert rep["division_remainder"] == "-1/2"


def test_polynomial_condition2():
    rep = fz.polynomial_condition2(30, seed=4)
    assert rep["passed"] and rep["applicable"] > 0
