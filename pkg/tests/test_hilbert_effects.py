import numpy as np
import pytest

from seaworks import hilbert_effects as h
from seaworks.hilbert_effects import (
    DegenerateSpectrumError,
    DensityOperator,
    HilbertEffects,
    HSEffects,
    MatrixEffect,
    NotAnEffect,
    QuotientError,
    RankOneProjection,
    hs_matrix,
    hs_product,
    hs_scalar,
    sequential_quotient,
    std_product,
    support_projection,
)


def rng(seed=0):
    return np.random.default_rng(seed)


def test_rejects_non_hermitian():
    with pytest.raises(NotAnEffect):
        MatrixEffect([[0.5, 0.1], [0.0, 0.5]])


def test_rejects_spectrum_outside_unit():
    with pytest.raises(NotAnEffect):
        MatrixEffect(np.diag([1.2, 0.3]))
    with pytest.raises(NotAnEffect):
        MatrixEffect(np.diag([-0.2, 0.3]))


def test_sqrt_squares_back():
    a = h.random_effect(4, rng())
    assert np.allclose(a.sqrt @ a.sqrt, a.matrix, atol=1e-12)


def test_standard_product_of_commuting_diagonals():
    a = MatrixEffect.diag([0.25, 1.0])
    b = MatrixEffect.diag([0.5, 0.5])
    assert np.allclose(std_product(a, b).matrix, np.diag([0.125, 0.5]))


def test_unit_and_zero_laws():
    a = h.random_effect(3, rng(1))
    one = MatrixEffect.identity(3)
    assert h.dist(std_product(one, a), a) < 1e-12
    assert h.dist(std_product(a, one), a) < 1e-12


def test_sharp_elements_are_projections():
    M = HilbertEffects(3)
    p = RankOneProjection([1, 1j, 0]).effect()
    assert M.is_sharp(p)
    assert not M.is_sharp(MatrixEffect.diag([0.5, 0, 0]))


def test_hat_is_support_projection():
    a = MatrixEffect.diag([0.3, 0.0, 0.7])
    assert np.allclose(support_projection(a).matrix, np.diag([1.0, 0.0, 1.0]))


def test_degenerate_spectrum_raises():
    # an eigenvalue above rounding noise but below the cutoff is refused
    a = MatrixEffect.diag([1e-11, 0.5])
    with pytest.raises(DegenerateSpectrumError):
        support_projection(a)


def test_quotient_round_trip_and_bound():
    r = rng(2)
    b = h.random_effect(3, r)
    c0 = h.random_effect(3, r)
    a = std_product(b, c0)
    q = sequential_quotient(a, b)
    assert q.exists and q.unique
    assert h.dist(std_product(b, q.c), a) < 1e-8
    assert h.loewner_leq(q.c, support_projection(b))


def test_quotient_recovers_planted_on_rank_deficient_denominator():
    r = rng(3)
    b = h.random_effect(4, r, rank=2)
    hat = support_projection(b)
    c0 = std_product(hat, h.random_effect(4, r))
    a = std_product(b, c0)
    q = sequential_quotient(a, b)
    assert h.dist(q.c, c0) < 1e-8


def test_quotient_refuses_when_not_below():
    with pytest.raises(QuotientError):
        sequential_quotient(MatrixEffect.diag([0.9, 0.1]), MatrixEffect.diag([0.5, 0.5]))


def test_zero_over_anything_and_sharp_denominator():
    r = rng(4)
    b = h.random_effect(3, r)
    q = sequential_quotient(MatrixEffect.zero(3), b)
    assert h.dist(q.c, MatrixEffect.zero(3)) < 1e-12
    p = RankOneProjection([1, 0, 0]).effect()
    a = MatrixEffect.diag([0.4, 0, 0])
    assert h.dist(sequential_quotient(a, p).c, a) < 1e-12


def test_density_operator_faithful():
    assert DensityOperator.diag([0.5, 0.5]).faithful
    assert not DensityOperator.diag([1.0, 0.0]).faithful
    with pytest.raises(ValueError):
        DensityOperator.diag([0.5, 0.6])


def test_hs_product_cases():
    W = DensityOperator.diag([0.75, 0.25])
    A = hs_matrix(np.diag([1.0, 0.0]))
    s = hs_scalar(0.5)
    # A . a = a A stays in E(H)
    out = hs_product(A, s, W)
    assert out.kind == "matrix"
    assert np.allclose(np.asarray(out.value), np.diag([0.5, 0.0]))
    # a . A = a tr(W A) lands in [0, 1]
    out = hs_product(s, A, W)
    assert out.kind == "scalar" and abs(out.value - 0.375) < 1e-12
    assert hs_product(h.HS_ONE, A, W) == A
    assert hs_product(A, h.HS_ZERO, W) == h.HS_ZERO


def test_hs_needs_faithful_state():
    with pytest.raises(h.NotFaithful):
        HSEffects(2, DensityOperator.diag([1.0, 0.0]))


def test_hs_witness_pair_differs():
    w = h.hs_witnesses(2)
    assert w["differ"]
    assert abs(w["product_W1"] - 0.25) < 1e-12
    assert abs(w["product_W2"] - 0.375) < 1e-12


def test_hs_model_ops():
    M = HSEffects(2)
    a = hs_scalar(0.25)
    assert M.dist(M.oplus(a, a), hs_scalar(0.5)) < 1e-12
    assert M.hat(a) == h.HS_ONE


@pytest.mark.parametrize("suite", ["axioms", "thm48", "thm51", "quotient"])
@pytest.mark.parametrize("d", [2, 3])
def test_suites_pass_small(suite, d):
    assert h.run_suite(suite, d, 60, seed=5)["passed"]


def test_hs_suite_small():
    r = h.run_suite("hs", 3, 60, seed=1)
    assert r["passed"]
    assert r["condition1"]["passed"]
    assert r["distinct_W"]["differ"]


def test_suite_reports_are_seeded():
    a = h.run_suite("axioms", 2, 20, seed=9)
    b = h.run_suite("axioms", 2, 20, seed=9)
    assert a == b
