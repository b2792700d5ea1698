import numpy as np
import pytest

from oracles import brute_force
from seaworks import _kernels
from seaworks.ea_construct import boolean, boolean_meet, cartesian_product, chain, diamond
from seaworks.ea_core import FiniteEffectAlgebra
from seaworks.seq_solver import (
    CarrierTooLarge,
    MultipleProducts,
    enumerate_products,
    search_statistics,
    unique_product,
)


@pytest.mark.parametrize("E", [chain(1), chain(2)], ids=["C2", "C3"])
def test_solver_matches_brute_force(E):
    expected = brute_force(E)
    got = {t.flat() for t in enumerate_products(E, limit=100).tables}
    assert got == expected


def test_c2_unique():
    t = unique_product(chain(1))
    assert t is not None
    assert t("1", "1") == "1" and t("0", "1") == "0"


@pytest.mark.parametrize("E", [chain(2), chain(3), chain(4), diamond()], ids=lambda e: e.name)
def test_nonexistence(E):
    assert enumerate_products(E).verdict == "none"


@pytest.mark.parametrize("k", [2, 3])
def test_boolean_unique_meet(k):
    E = boolean(k)
    out = enumerate_products(E)
    assert out.verdict == "unique"
    assert out.tables[0] == boolean_meet(E)


def test_limit_must_be_positive():
    with pytest.raises(ValueError):
        enumerate_products(boolean(2), limit=0)


def test_unique_product_raises_on_multiple(monkeypatch):
    from seaworks import seq_solver
    from seaworks.seq_solver import SolveOutcome

    E = chain(1)
    t = unique_product(E)
    monkeypatch.setattr(seq_solver, "enumerate_products",
                        lambda E, limit, **kw: SolveOutcome(E, [t, t], False, limit))
    with pytest.raises(MultipleProducts):
        seq_solver.unique_product(E)


def test_size_bound():
    with pytest.raises(CarrierTooLarge):
        enumerate_products(boolean(3), max_size=4)


def test_rejects_non_effect_algebra():
    with pytest.raises(ValueError):
        enumerate_products(FiniteEffectAlgebra(["0", "a", "1"], []))


def test_statistics_fields():
    s = search_statistics(enumerate_products(boolean(2)))
    assert s["verdict"] == "unique"
    assert s["nodes"] >= 1
    assert set(s["firings"]) == {"S1", "S2", "S3", "S4", "S5"}


# -- backend cross-checks


def all_backends():
    return list(_kernels.backends().items())


@pytest.mark.parametrize("E", [chain(1), chain(2), chain(3), diamond(), boolean(2), boolean(3),
                               cartesian_product([chain(1), chain(2)])],
                         ids=lambda e: e.name)
def test_backends_agree_on_search(E):
    results = {name: [t.flat() for t in enumerate_products(E, backend=k).tables]
               for name, k in all_backends()}
    first = next(iter(results.values()))
    assert all(r == first for r in results.values())


@pytest.mark.parametrize("d", [1, 2, 3, 5, 8])
def test_jacobi_matches_numpy(d):
    rng = np.random.default_rng(d)
    x = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    a = (x + x.conj().T) / 2
    ref = np.linalg.eigvalsh(a)
    for name, k in all_backends():
        w, v = k.jacobi_eigh(a)
        order = np.argsort(w)
        w, v = np.asarray(w)[order], np.asarray(v)[:, order]
        assert np.allclose(w, ref, atol=1e-12), name
        assert np.allclose(v @ np.diag(w) @ v.conj().T, a, atol=1e-12), name
        assert np.allclose(v.conj().T @ v, np.eye(d), atol=1e-12), name


def test_jacobi_backends_agree():
    backs = all_backends()
    if len(backs) < 2:
        pytest.skip("compiled kernels not built")
    rng = np.random.default_rng(7)
    x = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    a = (x + x.conj().T) / 2
    ws = [np.sort(np.asarray(k.jacobi_eigh(a)[0])) for _, k in backs]
    assert np.allclose(ws[0], ws[1], atol=1e-13)
