from fractions import Fraction as F

import pytest

from seaworks import fuzzy_sea as fz
from seaworks import seq_order as so
from seaworks.ea_construct import boolean, boolean_meet, chain
from seaworks.seq_solver import unique_product


@pytest.fixture(scope="module")
def b8():
    return so.boolean_model(3)


@pytest.fixture(scope="module")
def fuzzy():
    return so.fuzzy_model(("p", "q"))


def scalar(M, r):
    return fz.FuzzyElement(M.model.base, tuple(F(r) for _ in M.model.base))


def test_boolean_conditions(b8):
    assert so.check_condition1(b8)["passed"]
    assert so.check_condition2(b8)["passed"]


def test_boolean_quotients_unique(b8):
    for a, b in so.ordered_pairs(b8):
        q = so.sequential_quotient(b8, a, b)
        assert q.c is not None and q.unique


def test_quotient_examples_from_finite_sea():
    E = chain(1)
    M = so.finite_sea(E, unique_product(E))
    assert so.sequential_quotient(M, "0", "1").c == "0"
    assert so.sequential_quotient(M, "1", "1").c == "1"
    assert so.sequential_quotient(M, "1", "0").c is None


def test_sharp_denominator_gives_numerator(b8):
    # a <= b with b sharp gives a/b = a
    assert so.sequential_quotient(b8, "x", "xy").c == "x"


def test_hat_of_sharp_element_is_itself():
    E = boolean(2)
    M = so.finite_sea(E, boolean_meet(E))
    assert M.hat("x") == "x"


def test_omega_condition1_counterexample():
    M = so.omega_sea(10)
    rep = so.check_condition1(M)
    assert not rep["passed"]
    assert ["a", "2a"] in rep["counterexamples"]


def test_omega_condition2_counterexample():
    M = so.omega_sea(6)
    rep = so.check_condition2(M)
    assert not rep["passed"]
    # (c, a, b) = (a, 2a, a): a.2a = 0 = a.a but hat(a).2a = 2a is not below a
    triples = so.check_condition2(M, [(M.algebra.low(1), M.algebra.low(2), M.algebra.low(1))])
    assert not triples["passed"]


def test_fuzzy_quotient_example(fuzzy):
    a = fz.parse_element("p=1/4,q=0")
    b = fz.parse_element("p=1/2,q=1/3")
    q = so.sequential_quotient(fuzzy, a, b)
    assert q.c == fz.parse_element("p=1/2,q=0")


def test_fuzzy_conditions(fuzzy):
    assert so.check_condition1(fuzzy, so.ordered_pairs(fuzzy, 100, 0))["passed"]
    assert so.check_condition2(fuzzy, so.condition2_samples(fuzzy, 100, 0))["passed"]


def test_identity_suite_boolean(b8):
    rep = so.identity_suite(b8)
    assert rep["passed"], {k: v for k, v in rep["identities"].items() if not v["passed"]}
    assert {"self_quotient", "sharp_iff_fixed", "power_cancel", "complement_quotient",
            "product_quotient", "monotone", "additive", "sum_quotient",
            "commute_lift", "associator_factor", "complement_factor"} <= set(rep["identities"])


def test_identity_suite_fuzzy(fuzzy):
    rep = so.identity_suite(fuzzy, n=60, seed=3)
    assert rep["passed"]


def test_characterization(fuzzy):
    good = so.quotient_characterization(fuzzy, fz.fuzzy_quotient, n=60)
    assert good["passed"]
    bad = so.quotient_characterization(fuzzy, fz.unmasked_division, n=60)
    assert not bad["identity"]["passed"]


def test_interval_scalar_example():
    M = so.fuzzy_model(("t",))
    half = scalar(M, "1/2")
    I = so.interval_sea(M, half)
    out = I.product(scalar(M, "1/4"), scalar(M, "1/2"))
    assert out == scalar(M, "1/4")
    # unit law on [0, b]
    c = scalar(M, "1/8")
    assert I.product(half, c) == c


def test_interval_on_sharp_is_restriction(b8):
    I = so.interval_sea(b8, "xy")
    rep = so.interval_report(I)
    assert rep["passed"] and rep["restriction"]


def test_interval_fuzzy(fuzzy):
    b = fz.parse_element("p=1/2,q=1/3")
    rep = so.interval_report(so.interval_sea(fuzzy, b), n=60)
    assert rep["passed"]


def test_interval_needs_nonzero_b(b8):
    with pytest.raises(ValueError):
        so.interval_sea(b8, "0")


def test_hilbert_order_model():
    M = so.hilbert_model(2)
    assert so.check_condition1(M, so.ordered_pairs(M, 40, 1))["passed"]
    assert so.check_condition2(M, so.condition2_samples(M, 40, 1))["passed"]


def test_hs_breaks_condition2_only():
    M = so.hs_model(2)
    assert so.check_condition1(M, so.ordered_pairs(M, 60, 0))["passed"]
    assert not so.check_condition2(M, so.condition2_samples(M, 300, 0))["passed"]


def test_polynomial_breaks_condition1():
    M = so.polynomial_model()
    f = fz.poly(fz.X / 2)
    g = fz.poly(fz.X / 2 + F(1, 2))
    assert not so.check_condition1(M, [(f, g)])["passed"]


def test_sampled_pairs_expose_polynomial_condition1():
    M = so.polynomial_model()
    pairs = so.ordered_pairs(M, 30, 0)
    assert all(M.leq(a, b) for a, b in pairs)
    assert not so.check_condition1(M, pairs)["passed"]


def test_interval_report_on_omega_fails_without_raising():
    M = so.omega_sea(4)
    rep = so.interval_report(so.interval_sea(M, M.algebra.low(2)))
    assert not rep["passed"] and "no quotient" in rep["error"]


def test_hs_product_quotient_identity_fails():
    rep = so.identity_suite(so.hs_model(2), n=60, seed=0)
    assert not rep["identities"]["product_quotient"]["passed"]
